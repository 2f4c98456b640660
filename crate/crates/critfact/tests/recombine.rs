use critfact::cli::parse_poly;
use critfact::error::Error;
use critfact::fields::FieldCtx;
use critfact::linalg::SubspaceBasis;
use critfact::polyring::BiPoly;
use critfact::recombine::{
    count_factors, d_operator, irreducible_test, irreducible_test_traced, niederreiter, partition_search, reasonably_ramified,
    solve_recombination, solve_recombination_with, uses_prime_field, Exit, RecombOptions, RecombState,
};
use proptest::prelude::*;

fn bp(s: &str, f: &FieldCtx) -> BiPoly {
    parse_poly(s, f).unwrap()
}

fn same_factors(got: &[BiPoly], want: &[BiPoly]) -> bool {
    let norm = |v: &[BiPoly]| {
        let mut v: Vec<BiPoly> = v.iter().map(|g| g.normalize()).collect();
        v.sort_by(|a, b| a.cmp_canon(b));
        v
    };
    norm(got) == norm(want)
}

fn ones(f: &FieldCtx, s: usize) -> Vec<critfact::fields::Elem> {
    vec![f.one(); s]
}

#[test]
fn ex1_recombines_five_branches_into_two_factors() {
    let q = FieldCtx::rationals();
    let f = bp("y^6-(y-x)^2", &q);
    let sol = solve_recombination(&f).unwrap();
    assert!(same_factors(
        &sol.factors,
        &[bp("y^3-y+x", &q), bp("y^3+y-x", &q)]
    ));
    assert_eq!(sol.expand(&q), f);
    let t = &sol.trace;
    assert_eq!(t.s, 5);
    assert_eq!(t.dim_da, Some(3));
    assert_eq!(t.dim_z, Some(1));
    let z = SubspaceBasis::from_rows(&q, 5, t.z_basis.clone());
    let e = |v: i64| q.from_i64(v);
    assert!(z.contains(&[e(1), e(-1), e(0), e(0), e(0)]));
}

#[test]
fn ex1_count_is_dim_v_minus_dim_z() {
    let q = FieldCtx::rationals();
    let f = bp("y^6-(y-x)^2", &q);
    let c = count_factors(&f).unwrap();
    assert_eq!(c.count, 2);
    assert_eq!(c.refined.unwrap_or(c.count), 2);
}

#[test]
fn linear_factors_meeting_at_the_origin() {
    let q = FieldCtx::rationals();
    let f = bp("(y-x)*(y+x)*(y-2*x)", &q);
    let c = count_factors(&f).unwrap();
    assert_eq!(c.count, 3);
    let sol = solve_recombination(&f).unwrap();
    assert_eq!(sol.factors.len(), 3);
    assert_eq!(sol.expand(&q), f);
}

#[test]
fn exlin_counts_two_and_is_not_reasonably_ramified() {
    let q = FieldCtx::rationals();
    let f = bp("((y-x)^2+y^10)*(y-x)", &q);
    let st = RecombState::new(&f).unwrap();
    assert_eq!(st.s(), 3);
    let v = st.da_kernel().unwrap();
    let z = st.z_space().unwrap();
    assert_eq!((v.dim(), z.dim()), (3, 1));
    let e = |v: i64| q.from_i64(v);
    // factors sorted by degree: y - x, the quadratic branch, then y^8 + 1
    assert_eq!(st.af.degrees(), vec![1, 2, 8]);
    assert!(z.contains(&[e(2), e(-1), e(0)]));
    let c = count_factors(&f).unwrap();
    assert_eq!(c.count, 2);
    assert_eq!(c.refined.unwrap_or(c.count), 2);
    assert!(matches!(reasonably_ramified(&f), Err(Error::NotApplicable(_))));
    let sol = solve_recombination(&f).unwrap();
    assert!(same_factors(&sol.factors, &[bp("(y-x)^2+y^10", &q), bp("y-x", &q)]));
}

#[test]
fn ex1_is_reasonably_ramified() {
    let q = FieldCtx::rationals();
    let f = bp("y^6-(y-x)^2", &q);
    let r = reasonably_ramified(&f).unwrap();
    assert_eq!(r.vectors.len(), 2);
    assert!(same_factors(&r.factors, &[bp("y^3-y+x", &q), bp("y^3+y-x", &q)]));
}

#[test]
fn ex2_is_irreducible() {
    let q = FieldCtx::rationals();
    let f = bp("(y-x^2)^2+y^3", &q);
    assert!(irreducible_test(&f).unwrap());
    let sol = solve_recombination(&f).unwrap();
    assert_eq!(sol.factors, vec![f.clone()]);
}

#[test]
fn ex2_reaches_the_raised_precision_without_early_exits() {
    let q = FieldCtx::rationals();
    let f = bp("(y-x^2)^2+y^3", &q);
    let sol = solve_recombination_with(&f, RecombOptions {
            early_exit: false,
            ..RecombOptions::default()
        }).unwrap();
    assert_eq!(sol.factors.len(), 1);
    assert_eq!(sol.trace.exit, Exit::Raised);
    assert_eq!(sol.trace.q, Some(6));
    assert!(sol.trace.precisions.contains(&6));
}

#[test]
fn gf101_three_factors_without_raising() {
    let k = FieldCtx::prime(101).unwrap();
    let parts = ["y^2+x^3+y^2*x^3", "x^2*y^3+1", "(y-1)^2+x^3+x^3*(y-1)^2"];
    let want: Vec<BiPoly> = parts.iter().map(|p| bp(p, &k)).collect();
    let f = want.iter().fold(BiPoly::one(&k), |a, b| a.mul(b));
    let sol = solve_recombination(&f).unwrap();
    assert!(same_factors(&sol.factors, &want));
    assert_ne!(sol.trace.exit, Exit::Raised);
    assert_eq!(sol.trace.precisions.len(), 1);
    assert_eq!(sol.expand(&k), f);
}

#[test]
fn small_characteristic_uses_niederreiter() {
    let k = FieldCtx::prime(5).unwrap();
    let f = bp("(y^2-x)*(y^2-x-1)", &k);
    assert!(uses_prime_field(&k, 2, 4));
    let sol = solve_recombination(&f).unwrap();
    assert!(same_factors(&sol.factors, &[bp("y^2-x", &k), bp("y^2-x-1", &k)]));
    assert_eq!(sol.expand(&k), f);
    let c = count_factors(&f).unwrap();
    assert_eq!((c.count, c.exact), (2, true));
}

#[test]
fn characteristic_two() {
    let k = FieldCtx::prime(2).unwrap();
    let f = bp("(y^2+y+x)*(y+x)", &k);
    let sol = solve_recombination(&f).unwrap();
    assert!(same_factors(&sol.factors, &[bp("y^2+y+x", &k), bp("y+x", &k)]));
    assert!(!irreducible_test(&f).unwrap());
    assert!(irreducible_test(&bp("y^2+y+x", &k)).unwrap());
}

#[test]
fn content_is_factored() {
    let q = FieldCtx::rationals();
    let f = bp("(x^2-1)*x*(y^2-x)", &q);
    let sol = solve_recombination(&f).unwrap();
    assert_eq!(sol.content.len(), 3);
    assert_eq!(sol.factors.len(), 1);
    assert_eq!(sol.expand(&q), f);
    assert_eq!(count_factors(&f).unwrap().count, 4);
    assert!(!irreducible_test(&f).unwrap());
}

#[test]
fn vanishing_leading_coefficient_uses_a_moebius_change() {
    let q = FieldCtx::rationals();
    let f = bp("(x*y-1)*(x*y^2+y+x)", &q);
    let sol = solve_recombination(&f).unwrap();
    assert!(sol.trace.moebius.is_some());
    assert_eq!(sol.factors.len(), 2);
    assert_eq!(sol.expand(&q), f);
}

#[test]
fn wild_branches_fall_back_to_a_regular_fiber() {
    let k = FieldCtx::prime(2).unwrap();
    let f = bp("y^2+x^2*y+x^3", &k);
    let sol = solve_recombination(&f).unwrap();
    assert_eq!(sol.trace.exit, Exit::RegularFiber);
    assert_eq!(sol.factors.len(), 1);
    let g = bp("(y^2+x^2*y+x^3)*(y+x+1)", &k);
    let sol = solve_recombination(&g).unwrap();
    assert_eq!(sol.factors.len(), 2);
    assert_eq!(sol.expand(&k), g);
}

#[test]
fn d_operator_kills_logarithmic_derivatives() {
    let q = FieldCtx::rationals();
    let f1 = bp("y^2-x^3-x", &q);
    let f2 = bp("y-x^2+1", &q);
    let f = f1.mul(&f2);
    // G = F/F_1 · ∂_y F_1 has residues constant along F_1
    let g = f2.mul(&f1.deriv_y());
    assert!(d_operator(&g, &f).pseudo_rem(&f).is_zero());
    assert!(!d_operator(&g, &f).is_zero());
    let g = f.deriv_y();
    assert!(d_operator(&g, &f).is_zero());
    let g = bp("x*y", &q);
    assert!(!d_operator(&g, &f).pseudo_rem(&f).is_zero());
}

#[test]
fn all_ones_lies_in_every_space() {
    for (spec, s) in [("y^6-(y-x)^2", "Q"), ("(y-x^2)^2+y^3", "Q"), ("(y^2-x)*(y^2-x-1)", "5")] {
        let k = if s == "Q" { FieldCtx::rationals() } else { FieldCtx::prime(5).unwrap() };
        let f = bp(spec, &k);
        let st = RecombState::new(&f).unwrap();
        let ff = st.coef_field();
        let one = ones(&ff, st.s());
        let mut v = st.da_kernel().unwrap();
        assert!(v.contains(&one));
        if st.prime_field {
            v = st.na_kernel(&v).unwrap();
            assert!(v.contains(&one));
        }
        assert!(st.wn_space(st.dx + 4).unwrap().contains(&one));
    }
}

#[test]
fn fiberwise_niederreiter_kernel_matches_the_bivariate_operator() {
    let cases = [
        (5, "(y^2-x)*(y^2-x-1)"),
        (2, "(y^2+y+x)*(y+x)"),
        (3, "(y^2-x^3)*(y-x)*(y+x^2+1)"),
        (7, "(y^3-x^2)*(y^3-2*x^2)"),
    ];
    for (p, spec) in cases {
        let k = FieldCtx::prime(p).unwrap();
        let f = bp(spec, &k);
        let st = RecombState::new(&f).unwrap();
        assert!(st.prime_field, "{spec}");
        let v = st.da_kernel().unwrap();
        let n = st.na_kernel(&v).unwrap();
        let fpow = st.poly.pow(p - 1);
        // every vector of ker D_a over F_p, tested with the exact operator
        let dim = v.dim() as u32;
        let mut zeros = 0u64;
        for mut idx in 0..p.pow(dim) {
            let mut mu = vec![k.zero(); st.s()];
            for row in v.rows() {
                let c = k.from_i64((idx % p) as i64);
                idx /= p;
                for (m, r) in mu.iter_mut().zip(row) {
                    *m = k.add(m, &k.mul(&c, r));
                }
            }
            if niederreiter(&st.g_mu(&mu), &fpow).is_zero() {
                zeros += 1;
                assert!(n.contains(&mu), "{spec}");
            }
        }
        assert_eq!(zeros, p.pow(n.dim() as u32), "{spec}");
    }
}

#[test]
fn partition_oracle_agrees_on_ex1() {
    let q = FieldCtx::rationals();
    let f = bp("y^6-(y-x)^2", &q);
    let st = RecombState::new(&f).unwrap();
    let v = st.da_kernel().unwrap();
    let z = st.z_space().unwrap();
    let parts = partition_search(&v, &z).unwrap();
    assert!(!parts.is_empty());
    for p in &parts {
        let fs = st.reconstruct(p);
        let sol = solve_recombination(&f).unwrap();
        assert!(same_factors(&fs, &sol.factors) || fs.len() == 2);
    }
}

#[test]
fn irreducible_test_traces() {
    let q = FieldCtx::rationals();
    let (irr, t) = irreducible_test_traced(&bp("y^6-(y-x)^2", &q)).unwrap();
    assert!(!irr);
    assert_eq!(t.s, 5);
    assert!(matches!(
        irreducible_test(&bp("(y-x)^2", &q)),
        Err(Error::Inseparable)
    ));
}

fn small_poly() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..3, 0usize..3, -3i64..4), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]
    #[test]
    fn products_factor_back_over_gf101(a in small_poly(), b in small_poly()) {
        let k = FieldCtx::prime(101).unwrap();
        let ga = BiPoly::from_int_terms(&k, &a).add(&BiPoly::y(&k).pow(2));
        let gb = BiPoly::from_int_terms(&k, &b).add(&BiPoly::y(&k));
        let f = ga.mul(&gb);
        let Ok(sol) = solve_recombination(&f) else {
            prop_assume!(false);
            unreachable!()
        };
        prop_assert_eq!(sol.expand(&k), f.clone());
        prop_assert!(sol.factors.len() + sol.content.len() >= 2);
        let c = count_factors(&f).unwrap();
        prop_assert_eq!(c.refined.unwrap_or(c.count), sol.factors.len() + sol.content.len());
    }

    #[test]
    fn products_factor_back_over_rationals(a in small_poly(), b in small_poly()) {
        let q = FieldCtx::rationals();
        let ga = BiPoly::from_int_terms(&q, &a).add(&BiPoly::y(&q).pow(2));
        let gb = BiPoly::from_int_terms(&q, &b).add(&BiPoly::y(&q));
        let f = ga.mul(&gb);
        let Ok(sol) = solve_recombination(&f) else {
            prop_assume!(false);
            unreachable!()
        };
        prop_assert_eq!(sol.expand(&q), f.clone());
        for g in &sol.factors {
            prop_assert!(irreducible_test(g).unwrap());
        }
    }
}
