use critfact::cli::{format_poly, parse_poly};
use critfact::fields::{is_prime, Elem, FieldCtx, FieldElem};
use critfact::linalg::{hnf_rows, kernel_over_prime_field, kernel_reb, SubspaceBasis};
use critfact::polyring::{
    adic_expand, content_primitive_y, discriminant_y, moebius, resultant_y, resultant_y_formal,
    series_divrem, squarefree_part_y, valx_disc, valx_resultant_trunc, BiPoly, UniPoly,
};
use critfact::unifactor::{factor_uni, find_irreducible_coprime, find_nonroot, is_irreducible};
use critfact::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn q() -> FieldCtx {
    FieldCtx::rationals()
}

fn gf(p: u64) -> FieldCtx {
    FieldCtx::prime(p).unwrap()
}

fn bp(s: &str, f: &FieldCtx) -> BiPoly {
    parse_poly(s, f).unwrap()
}

fn up(s: &str, f: &FieldCtx) -> UniPoly {
    let b = bp(s, f);
    assert!(b.deg_y() <= 0);
    b.cy(0)
}

#[test]
fn primality() {
    let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
    assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    assert!(is_prime((1 << 61) - 1));
    assert!(is_prime((1 << 31) - 1));
    assert!(!is_prime(561));
    assert!(!is_prime(3_215_031_751));
    assert!(!is_prime(((1u64 << 31) - 1) * ((1 << 31) - 1)));
}

#[test]
fn prime_field_inverse() {
    let f = gf(7);
    assert_eq!(f.inv(&f.from_i64(3)).unwrap(), f.from_i64(5));
}

#[test]
fn rationals_reduce_to_lowest_terms() {
    let f = q();
    let a = FieldElem::ratio(&f, 2, 6).unwrap();
    let b = FieldElem::ratio(&f, 1, 6).unwrap();
    assert_eq!(a.add(&b).unwrap(), FieldElem::ratio(&f, 1, 2).unwrap());
}

#[test]
fn gf4_product_and_frobenius() {
    let f = FieldCtx::gf(2, 2, Some(vec![1, 1, 1])).unwrap();
    let t = f.gen();
    let t1 = f.add(&t, &f.one());
    assert!(f.is_one(&f.mul(&t, &t1)));
    assert_eq!(f.frobenius(&t).unwrap(), t1);
}

#[test]
fn gf9_frobenius_and_coords() {
    let f = FieldCtx::gf(3, 2, Some(vec![1, 0, 1])).unwrap();
    let t = f.gen();
    assert_eq!(f.frobenius(&t).unwrap(), f.mul(&t, &f.from_i64(2)));
    let a = f.add(&f.mul(&t, &f.from_i64(2)), &f.one());
    assert_eq!(f.prime_coords(&a).unwrap(), vec![1, 2]);
    assert_eq!(gf(7).prime_coords(&Elem::P(4)).unwrap(), vec![4]);
    let g = FieldCtx::gf(2, 3, Some(vec![1, 1, 0, 1])).unwrap();
    let t2 = g.mul(&g.gen(), &g.gen());
    assert_eq!(g.prime_coords(&t2).unwrap(), vec![0, 0, 1]);
}

#[test]
fn frobenius_fixes_prime_field_and_fails_over_q() {
    let f = gf(5);
    assert_eq!(f.frobenius(&f.from_i64(2)).unwrap(), f.from_i64(2));
    assert!(matches!(q().frobenius(&q().one()), Err(Error::NotApplicable(_))));
    assert!(q().prime_coords(&q().one()).is_err());
}

#[test]
fn mixing_contexts_is_an_error() {
    let a = FieldElem::from_i64(&gf(5), 1);
    let b = FieldElem::from_i64(&gf(7), 1);
    assert_eq!(a.add(&b), Err(Error::ContextMismatch));
    assert_eq!(FieldElem::from_i64(&gf(5), 0).inv(), Err(Error::DivisionByZero));
}

#[test]
fn reducible_modulus_is_rejected() {
    assert!(FieldCtx::gf(2, 2, Some(vec![1, 0, 1])).is_err());
    assert!(FieldCtx::prime(6).is_err());
}

#[test]
fn bivariate_arithmetic() {
    let f = q();
    assert_eq!(bp("y^2-x", &f).deriv_y(), bp("2*y", &f));
    let a = bp("y^3-y+x", &f);
    let b = bp("y^3+y-x", &f);
    let c = bp("y^6-(y-x)^2", &f);
    assert_eq!(a.mul(&b), c);
    assert_eq!(c.div_exact(&a).unwrap(), b);
}

#[test]
fn content_and_primitive_part() {
    let f = q();
    let (c, p) = content_primitive_y(&bp("x*(y+1)", &f));
    assert_eq!((c, p), (up("x", &f), bp("y+1", &f)));
    let (c, p) = content_primitive_y(&bp("y^2-x", &f));
    assert_eq!((c, p), (up("1", &f), bp("y^2-x", &f)));
    let (c, p) = content_primitive_y(&bp("(x^2+x)*(y^2-x)", &f));
    assert_eq!((c, p), (up("x^2+x", &f), bp("y^2-x", &f)));
}

#[test]
fn squarefree_part() {
    let f = q();
    let s = squarefree_part_y(&bp("(y-x)^2*(y+1)", &f)).unwrap();
    assert_eq!(s.normalize(), bp("(y-x)*(y+1)", &f));
    let e = bp("y^6-(y-x)^2", &f);
    assert_eq!(squarefree_part_y(&e).unwrap(), e);
    assert!(matches!(squarefree_part_y(&bp("y^2", &gf(2))), Err(Error::SmallCharacteristic(2))));
}

#[test]
fn resultants_and_discriminants() {
    let f = q();
    // Sylvester determinant | 1 0 -x ; 2 0 0 ; 0 2 0 | = -4x
    assert_eq!(resultant_y(&bp("y^2-x", &f), &bp("2*y", &f)), up("-4*x", &f));
    assert_eq!(discriminant_y(&bp("y^2-x", &f)), up("4*x", &f));
    assert_eq!(valx_disc(&bp("y^2-x", &f)), Some(1));
    assert_eq!(valx_disc(&bp("(y-x^2)^2+y^3", &f)), Some(6));
    assert_eq!(valx_disc(&bp("(y-1)*(y+1)", &f)), Some(0));
    assert_eq!(valx_disc(&bp("(y-x)^2", &f)), None);
}

#[test]
fn moebius_examples() {
    let f = q();
    let (g, rec) = moebius(&bp("y^2-x", &f), &f.one()).unwrap();
    assert_eq!(g, bp("(1-x)*y^2+2*y+1", &f));
    assert_eq!(rec.undo(&g), bp("y^2-x", &f));
    let (g, _) = moebius(&bp("y+1", &f), &f.zero()).unwrap();
    assert_eq!(g, bp("1+y", &f));
    assert_eq!(moebius(&bp("y", &f), &f.zero()), Err(Error::BadCenter));
}

#[test]
fn adic_expansion_examples() {
    let f = q();
    let e = adic_expand(&bp("y+x*(y+1)", &f), &up("x", &f));
    assert_eq!(e.digits, vec![bp("y", &f), bp("y+1", &f)]);
    assert_eq!(e.truncate(1, 2), bp("x*(y+1)", &f));
    let g = gf(3);
    let e = adic_expand(&bp("(x^2+1)*y", &g), &up("x^2+1", &g));
    assert_eq!(e.digits, vec![BiPoly::zero(&g), bp("y", &g)]);
    assert_eq!(e.reassemble(), bp("(x^2+1)*y", &g));
}

#[test]
fn series_division_examples() {
    let f = q();
    let x = up("x", &f);
    let (qq, r) = series_divrem(&bp("y^2", &f), &bp("y", &f), &x, 3).unwrap();
    assert_eq!((qq, r), (bp("y", &f), BiPoly::zero(&f)));
    let (qq, r) = series_divrem(&BiPoly::zero(&f), &bp("y^2-x", &f), &x, 3).unwrap();
    assert!(qq.is_zero() && r.is_zero());
    let (qq, r) = series_divrem(&bp("x*y^3", &f), &bp("y^2-x", &f), &x, 4).unwrap();
    assert_eq!((qq, r), (bp("x*y", &f), bp("x^2*y", &f)));
}

#[test]
fn univariate_factorization_examples() {
    let f = q();
    assert!(is_irreducible(&up("x^2-2", &f)).unwrap());
    let fa = factor_uni(&up("x*(x^2-2)^2", &f)).unwrap();
    assert_eq!(fa.factors, vec![(up("x", &f), 1), (up("x^2-2", &f), 2)]);
    let g = gf(5);
    let fa = factor_uni(&up("x^2+1", &g)).unwrap();
    assert_eq!(fa.factors, vec![(up("x+2", &g), 1), (up("x+3", &g), 1)]);
    assert_eq!(factor_uni(&UniPoly::zero(&f)).is_err(), true);
}

#[test]
fn factorization_over_extensions_expands_back() {
    let f = FieldCtx::gf(3, 2, None).unwrap();
    let p = up("x^8-1", &f);
    let fa = factor_uni(&p).unwrap();
    assert_eq!(fa.factors.len(), 8);
    assert_eq!(fa.expand(&f), p);
    let qq = q();
    let l = FieldCtx::extension(&qq, vec![qq.from_i64(-2), qq.zero(), qq.one()], "z").unwrap();
    let p = up("x^4-4", &l);
    let fa = factor_uni(&p).unwrap();
    assert_eq!(fa.factors.len(), 3);
    assert_eq!(fa.expand(&l), p);
}

#[test]
fn irreducible_coprime_modulus() {
    let g2 = gf(2);
    assert_eq!(find_irreducible_coprime(&up("x", &g2)).unwrap(), up("x+1", &g2));
    let a = find_irreducible_coprime(&up("x*(x+1)*(x^2+x+1)", &g2)).unwrap();
    assert_eq!(a.deg(), 3);
    assert!(is_irreducible(&a).unwrap());
    let g3 = gf(3);
    assert_eq!(find_irreducible_coprime(&up("1", &g3)).unwrap(), up("x", &g3));
}

#[test]
fn nonroot_search() {
    let f = q();
    assert_eq!(find_nonroot(&bp("y", &f)), Some(f.one()));
    let g3 = gf(3);
    assert_eq!(find_nonroot(&bp("y*(y-1)*(y-2)", &g3)), None);
    assert_eq!(find_nonroot(&bp("y^2+1", &g3)), Some(g3.zero()));
}

fn row(f: &FieldCtx, v: &[i64]) -> Vec<Elem> {
    v.iter().map(|&a| f.from_i64(a)).collect()
}

#[test]
fn kernels() {
    let f = q();
    let k = kernel_reb(&f, &vec![row(&f, &[0, 0, 0]), row(&f, &[0, 0, 0])], 3);
    assert_eq!(k, SubspaceBasis::full(&f, 3));
    let g = gf(2);
    let k = kernel_reb(&g, &vec![row(&g, &[1, 1, 1])], 3);
    assert_eq!(k.rows(), &vec![row(&g, &[1, 0, 1]), row(&g, &[0, 1, 1])]);
    let g4 = FieldCtx::gf(2, 2, None).unwrap();
    let k = kernel_over_prime_field(&g4, &vec![vec![g4.gen()]], 1).unwrap();
    assert_eq!(k.dim(), 0);
    let g9 = FieldCtx::gf(3, 2, None).unwrap();
    let k = kernel_over_prime_field(&g9, &vec![vec![g9.zero(), g9.zero()]], 2).unwrap();
    assert_eq!(k.dim(), 2);
    assert!(kernel_over_prime_field(&f, &vec![row(&f, &[1])], 1).is_err());
}

#[test]
fn intersections() {
    let f = q();
    let a = SubspaceBasis::from_rows(&f, 2, vec![row(&f, &[1, 0]), row(&f, &[0, 1])]);
    let b = SubspaceBasis::from_rows(&f, 2, vec![row(&f, &[1, 1])]);
    assert_eq!(a.intersect(&b).unwrap(), b);
    assert_eq!(b.intersect(&b).unwrap(), b);
    assert_eq!(b.intersect(&SubspaceBasis::full(&f, 2)).unwrap(), b);
    let c = SubspaceBasis::full(&f, 3);
    assert_eq!(a.intersect(&c), Err(Error::DimensionMismatch(2, 3)));
}

fn irows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
    v.iter().map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect()
}

#[test]
fn hermite_normal_forms() {
    let id = irows(&[&[1, 0], &[0, 1]]);
    assert_eq!(hnf_rows(&id), id);
    // columns of the reduced echelon basis reordered so that the coordinates
    // that are free in Z come first
    let perm = [2usize, 4, 3, 0, 1];
    let base = irows(&[&[1, 0, 0, 0, 1], &[0, 1, 0, 0, 1], &[0, 0, 1, 1, -1]]);
    let permuted: Vec<Vec<BigInt>> =
        base.iter().map(|r| perm.iter().map(|&c| r[c].clone()).collect()).collect();
    assert_eq!(
        hnf_rows(&permuted),
        irows(&[&[1, 0, 1, 0, 1], &[0, 1, 0, 0, 1], &[0, 0, 0, 1, -1]])
    );
    let m = irows(&[&[1, 0, 1, 0, 0], &[0, 1, 0, 1, 1], &[0, 0, 1, 2, -3]]);
    assert_eq!(
        hnf_rows(&m),
        irows(&[&[1, 0, 0, -2, 3], &[0, 1, 0, 1, 1], &[0, 0, 1, 2, -3]])
    );
}

#[test]
fn parse_and_format() {
    let f = q();
    assert_eq!(format_poly(&bp("y^3-y+x", &f)), "y^3-y+x");
    assert_eq!(format_poly(&bp("-x", &f)), "-x");
    assert!(matches!(parse_poly("y^(2)", &f), Err(Error::Syntax { .. })));
    assert!(matches!(parse_poly("y^2000000", &f), Err(Error::ExponentTooLarge { offset: 2 })));
    assert!(matches!(parse_poly("y+", &f), Err(Error::Syntax { offset: 2, .. })));
    let p = bp("3/2*x^2*y-7*y+1/3", &f);
    assert_eq!(bp(&format_poly(&p), &f), p);
    let g = FieldCtx::gf(2, 3, None).unwrap();
    let p = bp("(t+1)*x*y+t^2*y^2+t", &g);
    assert_eq!(bp(&format_poly(&p), &g), p);
}

fn small_poly() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..5, -4i64..5), 1..9)
}

fn build(f: &FieldCtx, terms: &[(usize, usize, i64)]) -> BiPoly {
    let mut p = BiPoly::zero(f);
    for &(i, j, c) in terms {
        p = p.add(&BiPoly::monomial(f, f.from_i64(c), i, j));
    }
    p
}

/// Determinant of the Sylvester matrix of `A(c, y)`, `B(c, y)` read with
/// the degrees of `A`, `B` in `y`.
fn sylvester_at(a: &BiPoly, b: &BiPoly, c: &Elem) -> Elem {
    let f = a.field();
    let (m, k) = (a.deg_y() as usize, b.deg_y() as usize);
    let n = m + k;
    let mut rows = Vec::new();
    for (p, deg, count) in [(a, m, k), (b, k, m)] {
        for shift in 0..count {
            let mut row = vec![f.zero(); n];
            for j in 0..=deg {
                row[shift + deg - j] = p.cy(j).eval(c);
            }
            rows.push(row);
        }
    }
    let mut det = f.one();
    for col in 0..n {
        let Some(r) = (col..n).find(|&r| !f.is_zero(&rows[r][col])) else {
            return f.zero();
        };
        if r != col {
            rows.swap(r, col);
            det = f.neg(&det);
        }
        let piv = rows[col][col].clone();
        det = f.mul(&det, &piv);
        for r in col + 1..n {
            let q = f.div(&rows[r][col], &piv).unwrap();
            for j in col..n {
                let v = f.sub(&rows[r][j], &f.mul(&q, &rows[col][j]));
                rows[r][j] = v;
            }
        }
    }
    det
}

fn fields() -> Vec<FieldCtx> {
    vec![q(), gf(3), gf(101), FieldCtx::gf(2, 3, None).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn discriminant_matches_the_subresultant_formula(terms in small_poly(), fi in 0usize..4) {
        let f = &fields()[fi];
        let a = build(f, &terms).add(&BiPoly::y(f).pow(2));
        prop_assume!(a.deg_y() >= 1);
        let d = a.deg_y() as usize;
        let fy = a.deriv_y();
        let direct = if fy.is_zero() {
            UniPoly::zero(f)
        } else {
            let r = resultant_y_formal(&a, &fy, d - 1).div_exact(&a.lc_y()).unwrap();
            if (d * (d - 1) / 2) % 2 == 1 { r.neg() } else { r }
        };
        let disc = discriminant_y(&a);
        prop_assert_eq!(&disc, &direct);
        prop_assert_eq!(valx_disc(&a), disc.val());
    }

    #[test]
    fn truncated_resultant_valuation(ta in small_poly(), tb in small_poly(), n in 1usize..12, fi in 0usize..4) {
        let f = &fields()[fi];
        let a = build(f, &ta);
        let b = build(f, &tb);
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(valx_resultant_trunc(&a, &b, n), resultant_y(&a, &b).truncate(n).val());
    }

    #[test]
    fn resultant_matches_sylvester_determinants(ta in small_poly(), tb in small_poly(), fi in 0usize..4) {
        let f = &fields()[fi];
        let a = build(f, &ta);
        let b = build(f, &tb);
        prop_assume!(a.deg_y() >= 1 && b.deg_y() >= 1);
        let r = resultant_y(&a, &b);
        for c in (0..6).map_while(|i| f.element_at(i)) {
            prop_assert_eq!(r.eval(&c), sylvester_at(&a, &b, &c));
        }
    }
}
