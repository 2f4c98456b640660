use critfact::analytic::{absolute_analytic, analytic_factor, q_bound, raise_precision, Place};
use critfact::cli::parse_poly;
use critfact::error::Error;
use critfact::fields::FieldCtx;
use critfact::polyring::{valx_disc, BiPoly, UniPoly};
use proptest::prelude::*;

fn bp(s: &str, f: &FieldCtx) -> BiPoly {
    parse_poly(s, f).unwrap()
}

fn xp(s: &str, f: &FieldCtx) -> UniPoly {
    let b = bp(s, f);
    assert!(b.deg_y() <= 0);
    b.cy(0)
}

fn check_invariants(f: &BiPoly, n: usize) {
    let af = analytic_factor(f, n).unwrap();
    assert_eq!(af.product(), f.truncate_x(n + 1));
    assert!(!f.field().is_zero(&af.unit.coeff(0)));
    let mut total = 0;
    for fac in &af.factors {
        assert_eq!(fac.poly.deg_y(), fac.d as isize);
        assert_eq!(fac.poly.lc_y(), UniPoly::monomial(f.field(), f.field().one(), fac.n_i).truncate(n + 1));
        let lc_val = fac.n_i;
        let c0 = fac.poly.cy(0).val().unwrap_or(usize::MAX);
        assert!(lc_val == 0 || c0 == 0, "lc and constant term both vanish at 0");
        total += fac.d;
    }
    assert_eq!(total as isize, f.deg_y());
}

#[test]
fn regular_fiber_over_gf5() {
    let f5 = FieldCtx::prime(5).unwrap();
    let f = bp("y^2-1-x", &f5);
    let af = analytic_factor(&f, 2).unwrap();
    assert_eq!(af.s(), 2);
    // (1+3x+3x^2)^2 = 1+x mod (5, x^3)
    let r = xp("1+3*x+3*x^2", &f5);
    let a = BiPoly::y(&f5).sub(&BiPoly::from_x_poly(&r));
    let b = BiPoly::y(&f5).add(&BiPoly::from_x_poly(&r));
    let got: Vec<BiPoly> = af.factors.iter().map(|g| g.poly.clone()).collect();
    assert!(got.contains(&a) && got.contains(&b));
    assert_eq!(af.product(), f.truncate_x(3));
}

#[test]
fn ex1_has_five_branches() {
    let q = FieldCtx::rationals();
    let f = bp("y^6-(y-x)^2", &q);
    let af = analytic_factor(&f, 3).unwrap();
    assert_eq!(af.s(), 5);
    // y^2+1 stays irreducible over Q
    assert_eq!(af.degrees(), vec![1, 1, 1, 1, 2]);
    let line = bp("y-x", &q);
    let near: Vec<_> = af.factors.iter().filter(|g| g.poly.truncate_x(3) == line).collect();
    assert_eq!(near.len(), 2);
    // y = x ± x^3 + ...
    assert_ne!(near[0].poly, near[1].poly);
    assert_eq!(near[0].poly.truncate_x(4).sub(&near[1].poly.truncate_x(4)).terms().len(), 1);
    assert_eq!(af.factors[0].poly.truncate_x(3), line);
    assert_eq!(af.factors[1].poly.truncate_x(3), line);
    check_invariants(&f, 3);
}

#[test]
fn ex1_factors_split_at_the_cube() {
    let q = FieldCtx::rationals();
    let f = bp("y^6-(y-x)^2", &q);
    let af2 = analytic_factor(&f, 2).unwrap();
    let af5 = raise_precision(&af2, &f, 5).unwrap();
    assert_eq!(af5, analytic_factor(&f, 5).unwrap());
    let a = &af5.factors[0].poly;
    let b = &af5.factors[1].poly;
    assert_eq!(a.truncate_x(3), b.truncate_x(3));
    assert_ne!(a.truncate_x(4), b.truncate_x(4));
    assert_eq!(raise_precision(&af5, &f, 5).unwrap(), af5);
}

#[test]
fn ramified_branch_is_one_factor() {
    let q = FieldCtx::rationals();
    for n in [0, 1, 4, 7] {
        let f = bp("y^2-x", &q);
        let af = analytic_factor(&f, n).unwrap();
        assert_eq!(af.s(), 1);
        assert_eq!(af.factors[0].poly, f.truncate_x(n + 1));
        assert_eq!(af.factors[0].e, 2);
    }
}

#[test]
fn ex2_counts_and_q_bound() {
    let q = FieldCtx::rationals();
    for (s, v) in [("(y-x^2)^2+y^3", 6), ("(y-x^3)^2+y^5", 15)] {
        let f = bp(s, &q);
        assert_eq!(valx_disc(&f), Some(v));
        let af = analytic_factor(&f, f.deg_x() as usize).unwrap();
        // one branch at y = 0 of degree 2, the rest at infinity or at nonzero places
        let at_zero: Vec<_> = af
            .factors
            .iter()
            .filter(|g| matches!(&g.place, Place::Finite(p) if p.deg() == 1 && UniPoly::var(p.field()) == *p))
            .collect();
        assert_eq!(at_zero.len(), 1);
        assert_eq!(at_zero[0].d, 2);
        check_invariants(&f, f.deg_x() as usize);
    }
    let f = bp("(y-x^2)^2+y^3", &q);
    let af = analytic_factor(&f, 2).unwrap();
    assert_eq!(af.degrees(), vec![1, 2]);
    assert_eq!(q_bound(&f, &af).unwrap(), 6);
}

#[test]
fn q_bound_examples() {
    let q = FieldCtx::rationals();
    let f = bp("(y-1)*(y+1)", &q);
    let af = analytic_factor(&f, 1).unwrap();
    assert_eq!(q_bound(&f, &af).unwrap(), 0);
    let f = bp("y^6-(y-x)^2", &q);
    let af = analytic_factor(&f, 1).unwrap();
    assert_eq!(q_bound(&f, &af).unwrap(), valx_disc(&f).unwrap());
}

#[test]
fn ex2_over_gf7_counts() {
    let f7 = FieldCtx::prime(7).unwrap();
    let f = bp("(y-x^2)^2+y^3", &f7);
    let af = analytic_factor(&f, 2).unwrap();
    assert_eq!(af.s(), 2);
    check_invariants(&f, 4);
}

#[test]
fn absolute_example_has_one_conjugate_pair() {
    let q = FieldCtx::rationals();
    let f = bp("y^4*(1+x^3)^2-2*x^6", &q);
    let af = absolute_analytic(&f, 3).unwrap();
    assert_eq!(af.s(), 1);
    assert_eq!(af.sbar(), 2);
    let g = &af.factors[0];
    assert_eq!((g.e, g.f, g.d), (2, 2, 4));
    let abs = g.absolute.as_ref().unwrap();
    assert_eq!(abs.minpoly, xp("x^2-2", &q));
    assert_eq!(abs.poly.deg_y(), 2);
    assert_eq!(af.product(), f.truncate_x(4));
}

#[test]
fn branches_at_infinity_are_normalized() {
    let q = FieldCtx::rationals();
    let f = bp("x*y^3+y-1", &q);
    let af = analytic_factor(&f, 4).unwrap();
    let inf: Vec<_> = af.factors.iter().filter(|g| g.place == Place::Infinity).collect();
    assert_eq!(inf.len(), 1);
    assert_eq!(inf[0].d, 2);
    assert_eq!(inf[0].n_i, 1);
    check_invariants(&f, 4);
}

#[test]
fn two_place_example_over_rationals() {
    let q = FieldCtx::rationals();
    let f = bp("y*(y^2-2)^3-x^2*(y^2-2)+x^5", &q);
    check_invariants(&f, 6);
    let af = absolute_analytic(&f, 6).unwrap();
    assert_eq!((af.s(), af.sbar()), (3, 7));
}

#[test]
fn small_characteristic_wild_branch_is_reported() {
    let f2 = FieldCtx::prime(2).unwrap();
    let f = bp("y^2+x^2*y+x^3", &f2);
    assert!(matches!(
        analytic_factor(&f, 2),
        Err(Error::SmallCharacteristicUnsupported(_))
    ));
}

fn small_poly(p: u64) -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..5, -3i64..4), 1..8).prop_map(move |v| {
        v.into_iter().map(|(i, j, c)| (i, j, c.rem_euclid(p as i64))).collect()
    })
}

fn build(f: &FieldCtx, terms: &[(usize, usize, i64)]) -> BiPoly {
    let mut p = BiPoly::zero(f);
    for &(i, j, c) in terms {
        p = p.add(&BiPoly::monomial(f, f.from_i64(c), i, j));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn product_invariant_over_gf101(terms in small_poly(101), n in 0usize..5) {
        let k = FieldCtx::prime(101).unwrap();
        let mut f = build(&k, &terms).add(&BiPoly::y(&k).pow(3));
        f = f.primitive_part_y();
        prop_assume!(f.deg_y() >= 1 && valx_disc(&f).is_some() && !f.eval_x(&k.zero()).is_zero());
        let af = analytic_factor(&f, n).unwrap();
        prop_assert_eq!(af.product(), f.truncate_x(n + 1));
        prop_assert_eq!(af.clone(), analytic_factor(&f, n).unwrap());
        let hi = analytic_factor(&f, n + 2).unwrap();
        prop_assert_eq!(hi.s(), af.s());
    }

    #[test]
    fn product_invariant_over_rationals(terms in small_poly(1000), n in 0usize..4) {
        let k = FieldCtx::rationals();
        let terms: Vec<_> = terms.into_iter().map(|(i, j, c)| (i, j, c % 7 - 3)).collect();
        let f = build(&k, &terms).add(&BiPoly::y(&k).pow(2)).primitive_part_y();
        prop_assume!(f.deg_y() >= 1 && valx_disc(&f).is_some() && !f.eval_x(&k.zero()).is_zero());
        let af = analytic_factor(&f, n).unwrap();
        prop_assert_eq!(af.product(), f.truncate_x(n + 1));
        let ab = absolute_analytic(&f, n).unwrap();
        prop_assert_eq!(ab.s(), af.s());
        prop_assert!(ab.sbar() <= f.deg_y() as usize);
    }
}
