use critfact::absolute::{abs_count, abs_factor, h_basis, norm_down};
use critfact::analytic::absolute_analytic;
use critfact::cli::parse_poly;
use critfact::error::Error;
use critfact::fields::FieldCtx;
use critfact::polyring::{BiPoly, UniPoly};

fn bp(s: &str, f: &FieldCtx) -> BiPoly {
    parse_poly(s, f).unwrap()
}

#[test]
fn conjugate_pair_over_rationals() {
    let q = FieldCtx::rationals();
    let f = bp("y^4*(1+x^3)^2-2*x^6", &q);
    let c = abs_count(&f).unwrap();
    assert_eq!(c.count, 2);
    assert_eq!((c.trace.sbar, c.trace.d_y), (2, 4));
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.pairs.len(), 1);
    assert_eq!(a.pairs[0].q, UniPoly::from_i64s(&q, &[-2, 0, 1]));
    assert_eq!(a.expand(&q), f);
    assert_eq!(a.count(), 2);
    let p = &a.pairs[0].poly;
    assert_eq!((p.deg_x(), p.deg_y()), (3, 2));
}

#[test]
fn ex1_factors_are_absolutely_irreducible() {
    let q = FieldCtx::rationals();
    let f = bp("y^6-(y-x)^2", &q);
    assert_eq!(abs_count(&f).unwrap().count, 2);
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.pairs.len(), 2);
    assert!(a.pairs.iter().all(|p| p.q == UniPoly::var(&q)));
    assert_eq!(a.expand(&q), f);
}

#[test]
fn absolutely_irreducible_inputs() {
    let q = FieldCtx::rationals();
    for s in ["y^2-x", "(y-x^2)^2+y^3", "y^3+x*y+x^2+1"] {
        let f = bp(s, &q);
        assert_eq!(abs_count(&f).unwrap().count, 1, "{s}");
        let a = abs_factor(&f).unwrap();
        assert_eq!(a.pairs.len(), 1);
        assert_eq!(a.pairs[0].q, UniPoly::var(&q));
        assert_eq!(a.expand(&q), f);
    }
}

#[test]
fn rational_equals_absolute() {
    let q = FieldCtx::rationals();
    let f = bp("(y^2-x)*(y^2-x-1)", &q);
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.pairs.len(), 2);
    assert!(a.pairs.iter().all(|p| p.degree() == 1));
    assert_eq!(a.expand(&q), f);
}

#[test]
fn irreducible_but_not_absolutely() {
    let q = FieldCtx::rationals();
    // y^2 + x^2 = (y - i x)(y + i x)
    let f = bp("y^2+x^2+x^4", &q);
    assert_eq!(abs_count(&f).unwrap().count, 1);
    let f = bp("y^4+2*x^2*y^2+x^4+x^5", &q);
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.expand(&q), f);
    assert_eq!(a.count(), abs_count(&f).unwrap().count);
    let f = bp("y^2-3*x^2*(1+x)^2", &q);
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.count(), 2);
    assert_eq!(a.pairs[0].q, UniPoly::from_i64s(&q, &[-3, 0, 1]));
    assert_eq!(a.expand(&q), f);
}

#[test]
fn content_and_univariate_parts() {
    let q = FieldCtx::rationals();
    let f = bp("(x^2+1)*(y^2-2)", &q);
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.count(), 4);
    assert_eq!(abs_count(&f).unwrap().count, 4);
    assert_eq!(a.expand(&q), f);
}

#[test]
fn leading_coefficient_vanishing_at_zero() {
    let q = FieldCtx::rationals();
    let f = bp("x*y^2-2*x^3+y", &q);
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.expand(&q), f);
    assert_eq!(a.count(), abs_count(&f).unwrap().count);
    let f = bp("x^3*y^2-2*x", &q).add(&bp("x^2*y^2", &q));
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.expand(&q), f);
}

#[test]
fn large_prime_field() {
    let k = FieldCtx::prime(101).unwrap();
    // 2 is not a square mod 101
    let f = bp("y^4*(1+x^3)^2-2*x^6", &k);
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.count(), 2);
    assert_eq!(a.expand(&k), f);
    assert_eq!(abs_count(&f).unwrap().count, 2);
}

#[test]
fn small_characteristic_counts_but_does_not_factor() {
    let k = FieldCtx::prime(3).unwrap();
    let f = bp("y^2-2*x^2*(1+x)^2", &k);
    assert_eq!(abs_count(&f).unwrap().count, 2);
    assert!(matches!(abs_factor(&f), Err(Error::SmallCharacteristic(3))));
    let g = bp("y^2+y+x", &k);
    assert_eq!(abs_count(&g).unwrap().count, 1);
}

#[test]
fn h_basis_reduces_to_rational_basis_when_fields_are_trivial() {
    let q = FieldCtx::rationals();
    let f = bp("(y-x)*(y+1-x^2)*(y-2)", &q);
    let af = absolute_analytic(&f, 2).unwrap();
    let hb = h_basis(&af, &f, 0, 3).unwrap();
    let rb = critfact::recombine::basis_polys(&af, 0, 3);
    assert_eq!(hb, rb);
}

#[test]
fn norm_of_a_generator() {
    let q = FieldCtx::rationals();
    let l = FieldCtx::extension_unchecked(&q, vec![q.from_i64(-2), q.zero(), q.one()], "z");
    let p = BiPoly::y(&l).sub(&BiPoly::constant(&l, l.gen()).mul(&BiPoly::x(&l)));
    assert_eq!(norm_down(&q, &l, &p), bp("y^2-2*x^2", &q));
}

#[test]
fn univariate_pairs_use_the_factor_as_q() {
    let q = FieldCtx::rationals();
    let f = bp("y^3-2", &q);
    let a = abs_factor(&f).unwrap();
    assert_eq!(a.pairs.len(), 1);
    assert_eq!(a.pairs[0].q, UniPoly::from_i64s(&q, &[-2, 0, 0, 1]));
    assert_eq!(a.expand(&q), f);
}
