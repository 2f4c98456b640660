use critfact::cli::parse_poly;
use critfact::fields::FieldCtx;
use critfact::polyring::{BiPoly, UniPoly};
use critfact::polytope::{
    degeneracy_report, edge_polynomial, lower_hull, p_adic_expand, polygon_irreducibility_certificate,
    Certificate,
};
use proptest::prelude::*;

fn bp(s: &str, f: &FieldCtx) -> BiPoly {
    parse_poly(s, f).unwrap()
}

fn yp(s: &str, f: &FieldCtx) -> UniPoly {
    let b = bp(s, f).transpose();
    assert!(b.deg_y() <= 0);
    b.cy(0)
}

#[test]
fn p_adic_support_of_y2_minus_x() {
    let q = FieldCtx::rationals();
    let sup = p_adic_expand(&bp("y^2-x", &q), &yp("y", &q));
    assert_eq!(sup.points(), vec![(0, 2), (1, 0)]);
}

#[test]
fn p_adic_support_of_the_two_place_example() {
    let q = FieldCtx::rationals();
    let f = bp("y*(y^2-2)^3-x^2*(y^2-2)+x^5", &q);
    let sup = p_adic_expand(&f, &yp("y^2-2", &q));
    assert_eq!(sup.points(), vec![(0, 3), (2, 1), (5, 0)]);
    assert_eq!(sup.digits[&(0, 3)], yp("y", &q));
    assert_eq!(sup.digits[&(2, 1)], yp("-1", &q));
    assert_eq!(sup.digits[&(5, 0)], yp("1", &q));
    assert_eq!(sup.reassemble(), f);
}

#[test]
fn hull_examples() {
    let h = lower_hull(&[(0, 2), (1, 0)]);
    assert_eq!(h.edges.len(), 1);
    assert_eq!((h.edges[0].start, h.edges[0].end, h.edges[0].length), ((0, 2), (1, 0), 1));
    let h = lower_hull(&[(0, 3), (2, 1), (5, 0)]);
    let e: Vec<_> = h.edges.iter().map(|e| (e.start, e.end)).collect();
    assert_eq!(e, vec![((0, 3), (2, 1)), ((2, 1), (5, 0))]);
    // the first edge (0,3)-(2,1) has gcd(2,2) = 2 lattice points steps
    assert_eq!(h.edges.iter().map(|e| e.length).collect::<Vec<_>>(), vec![2, 1]);
    assert!(lower_hull(&[(0, 5)]).edges.is_empty());
}

#[test]
fn edge_polynomials_of_the_two_place_example() {
    let q = FieldCtx::rationals();
    let f = bp("y*(y^2-2)^3-x^2*(y^2-2)+x^5", &q);
    let sup = p_adic_expand(&f, &yp("y^2-2", &q));
    let h = lower_hull(&sup.points());
    let e1 = edge_polynomial(&sup, &h.edges[0]);
    let l = e1.field.clone();
    let phi = l.gen();
    let expect = BiPoly::from_terms(&l, &[(0, 2, phi), (2, 0, l.from_i64(-1))]);
    assert_eq!(e1.poly, expect);
    assert!(e1.separable);
    assert_eq!(e1.factor_count, Some(1));
    let e2 = edge_polynomial(&sup, &h.edges[1]);
    assert_eq!(e2.poly, BiPoly::from_terms(&l, &[(0, 1, l.from_i64(-1)), (3, 0, l.one())]));
    let sup = p_adic_expand(&bp("y^2-x", &q), &yp("y", &q));
    let e = edge_polynomial(&sup, &lower_hull(&sup.points()).edges[0]);
    assert_eq!(e.poly, bp("y^2-x", &q));
    assert!(e.separable);
}

#[test]
fn report_two_place_example_over_q() {
    let q = FieldCtx::rationals();
    let r = degeneracy_report(&bp("y*(y^2-2)^3-x^2*(y^2-2)+x^5", &q)).unwrap();
    assert!(r.nondegenerate);
    assert_eq!((r.s_f, r.sbar_f), (3, 7));
}

#[test]
fn report_second_example_over_gf7() {
    let f = FieldCtx::prime(7).unwrap();
    let r = degeneracy_report(&bp("y^6*(y^2+1)^15-x^10*(1+y^21)", &f)).unwrap();
    assert!(r.nondegenerate);
    assert_eq!(r.sbar_f, 12);
    // T^5 = 1+φ over GF(49): one root, the other four split into two quadratics
    assert_eq!(r.s_f, 5);
}

#[test]
fn report_second_example_over_gf3_is_degenerate() {
    let f = FieldCtx::prime(3).unwrap();
    let r = degeneracy_report(&bp("y^6*(y^2+1)^15-x^10*(1+y^21)", &f)).unwrap();
    assert!(!r.nondegenerate);
}

#[test]
fn certificate_examples() {
    let q = FieldCtx::rationals();
    assert_eq!(polygon_irreducibility_certificate(&bp("y^2-x", &q)), Certificate::Yes);
    assert_eq!(polygon_irreducibility_certificate(&bp("y^2-x^2", &q)), Certificate::Unknown);
    assert_eq!(polygon_irreducibility_certificate(&bp("y^3-x^2", &q)), Certificate::Yes);
    assert_eq!(polygon_irreducibility_certificate(&bp("(y-x^2)^2+y^3", &q)), Certificate::Yes);
    assert_eq!(polygon_irreducibility_certificate(&bp("(y-x^3)^2+y^5", &q)), Certificate::Yes);
    assert_eq!(polygon_irreducibility_certificate(&bp("y^6-(y-x)^2", &q)), Certificate::Unknown);
    // one edge of length 1, but the place divides F or F has content in K[x]
    assert_eq!(polygon_irreducibility_certificate(&bp("y^2+x^2*y", &q)), Certificate::Unknown);
    assert_eq!(polygon_irreducibility_certificate(&bp("(x+1)*(y^2-x)", &q)), Certificate::Unknown);
}

fn arb_support() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0usize..8, 0usize..8), 1..12)
}

proptest! {
    #[test]
    fn hull_edges_are_below_all_points(pts in arb_support()) {
        let h = lower_hull(&pts);
        for e in &h.edges {
            prop_assert!(pts.contains(&e.start) && pts.contains(&e.end));
            let c = (e.beta * e.start.0 + e.alpha * e.start.1) as i64;
            for &(i, j) in &pts {
                prop_assert!((e.beta * i + e.alpha * j) as i64 >= c);
            }
        }
        for w in h.edges.windows(2) {
            // slopes -beta/alpha strictly increase
            prop_assert!(w[0].beta * w[1].alpha > w[1].beta * w[0].alpha);
            prop_assert_eq!(w[0].end, w[1].start);
        }
    }

    #[test]
    fn reassembly_is_identity(c in prop::collection::vec(-3i64..4, 12), pc in 0i64..3) {
        let q = FieldCtx::rationals();
        let terms: Vec<_> = c.iter().enumerate().map(|(k, &a)| (k % 3, k / 3, a)).collect();
        let f = BiPoly::from_int_terms(&q, &terms);
        let p = UniPoly::from_i64s(&q, &[pc - 1, 0, 1]);
        prop_assert_eq!(p_adic_expand(&f, &p).reassemble(), f);
    }
}
