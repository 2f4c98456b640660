//! P-adic Newton polytopes.
//!
//! For an irreducible `P ∈ K[y]`, a polynomial `F` is expanded as
//! `Σ f_ij x^i P^j` with `deg f_ij < deg P`. The compact lower edges of the
//! positive cone over the support give edge polynomials over `K_P = K[z]/(P)`;
//! their separability decides non-degeneracy, and their factor counts and
//! lattice lengths bound the numbers `s` and `s̄` of analytic factors over `K`
//! and over its algebraic closure.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::fields::{Elem, FieldCtx};
use crate::polyring::{BiPoly, UniPoly};
use crate::unifactor::factor_uni;

/// Digits of the expansion `F = Σ f_ij x^i P^j`, zero digits omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicSupport {
    pub modulus: UniPoly,
    pub digits: BTreeMap<(usize, usize), UniPoly>,
}

impl PAdicSupport {
    /// Support points `(i, j)` in increasing order.
    pub fn points(&self) -> Vec<(usize, usize)> {
        self.digits.keys().copied().collect()
    }

    /// `Σ f_ij x^i P^j`.
    pub fn reassemble(&self) -> BiPoly {
        let f = self.modulus.field();
        let p = BiPoly::from_y_poly(&self.modulus);
        let mut out = BiPoly::zero(f);
        for ((i, j), d) in &self.digits {
            let term = BiPoly::from_y_poly(d).mul(&p.pow(*j as u64)).shift_x(*i);
            out = out.add(&term);
        }
        out
    }
}

/// Expands each `x^i` coefficient of `F` in base `P`.
pub fn p_adic_expand(fp: &BiPoly, p: &UniPoly) -> PAdicSupport {
    assert!(p.deg() >= 1, "P must be non-constant");
    let mut digits = BTreeMap::new();
    if !fp.is_zero() {
        for i in 0..=fp.deg_x() as usize {
            let mut c = fp.cx(i);
            let mut j = 0;
            while !c.is_zero() {
                let (q, r) = c.divrem(p);
                if !r.is_zero() {
                    digits.insert((i, j), r);
                }
                c = q;
                j += 1;
            }
        }
    }
    PAdicSupport {
        modulus: p.clone(),
        digits,
    }
}

/// A compact edge of a Newton boundary, from its upper-left endpoint `start`
/// to its lower-right endpoint `end`. The difference `end - start` equals
/// `length · (alpha, -beta)` with `gcd(alpha, beta) = 1`; `a` and `b` are the
/// distances of the edge to the `y`- and `x`-axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub start: (usize, usize),
    pub end: (usize, usize),
    pub length: usize,
    pub alpha: usize,
    pub beta: usize,
    pub a: usize,
    pub b: usize,
}

impl Edge {
    fn new(start: (usize, usize), end: (usize, usize)) -> Self {
        let di = end.0 - start.0;
        let dj = start.1 - end.1;
        let length = di.gcd(&dj);
        Edge {
            start,
            end,
            length,
            alpha: di / length,
            beta: dj / length,
            a: start.0,
            b: end.1,
        }
    }

    /// True when `(i, j)` lies on the supporting line of the edge.
    pub fn on_line(&self, (i, j): (usize, usize)) -> bool {
        self.beta * i + self.alpha * j == self.beta * self.start.0 + self.alpha * self.start.1
    }
}

/// Compact edges of `Conv(S + R₊²)`, ordered by increasing slope.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NewtonBoundary {
    pub edges: Vec<Edge>,
}

impl NewtonBoundary {
    /// Sum of the lattice lengths of the edges.
    pub fn lattice_length(&self) -> usize {
        self.edges.iter().map(|e| e.length).sum()
    }
}

/// Lower convex hull walked from the leftmost point (lowest among ties) to
/// the lowest point (leftmost among ties).
pub fn lower_hull(points: &[(usize, usize)]) -> NewtonBoundary {
    let Some(&first) = points.iter().min_by_key(|&&(i, j)| (i, j)) else {
        return NewtonBoundary::default();
    };
    let last = *points.iter().min_by_key(|&&(i, j)| (j, i)).unwrap();
    let mut edges = Vec::new();
    let mut cur = first;
    while cur != last {
        // minimise (i - ic)/(jc - j); ties go to the farthest point
        let mut best: Option<(usize, usize)> = None;
        for &q in points {
            if q.1 >= cur.1 || q.0 < cur.0 {
                continue;
            }
            best = Some(match best {
                None => q,
                Some(b) => {
                    let lhs = (q.0 - cur.0) * (cur.1 - b.1);
                    let rhs = (b.0 - cur.0) * (cur.1 - q.1);
                    if lhs < rhs || (lhs == rhs && q.1 < b.1) {
                        q
                    } else {
                        b
                    }
                }
            });
        }
        let next = best.expect("lower hull reaches the lowest point");
        edges.push(Edge::new(cur, next));
        cur = next;
    }
    NewtonBoundary { edges }
}

/// The residue field `K_P = K[z]/(P)` and the class of `y` in it.
pub fn residue_field(p: &UniPoly) -> (FieldCtx, Elem) {
    let k = p.field();
    let m = p.monic();
    if m.deg() == 1 {
        return (k.clone(), k.neg(&m.coeff(0)));
    }
    let l = FieldCtx::extension_unchecked(k, m.coeffs().to_vec(), "z");
    let g = l.gen();
    (l, g)
}

/// Reduction of `d ∈ K[y]` modulo `P` inside `K_P`.
fn reduce_digit(l: &FieldCtx, phi: &Elem, d: &UniPoly) -> Elem {
    if l == d.field() {
        d.eval(phi)
    } else {
        l.from_ext_coeffs(d.coeffs().to_vec())
    }
}

/// Edge polynomial of an edge with its univariate images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePoly {
    pub edge: Edge,
    /// Coefficient field `K_P`.
    pub field: FieldCtx,
    /// `x^{-a} y^{-b} Σ_{(i,j)∈Λ} f̄_ij x^i y^j` over `K_P`.
    pub poly: BiPoly,
    /// The image at `x = 1`, in `y`.
    pub dehomogenized: UniPoly,
    /// `φ(T) = Σ_k c_k T^{ℓ-k}` where `c_k` sits at `start + k(alpha, -beta)`;
    /// the edge polynomial equals `x^{ℓ alpha} φ(y^beta / x^alpha)`.
    pub phi: UniPoly,
    pub separable: bool,
    /// Number of irreducible factors over `K_P`, when they could be counted.
    pub factor_count: Option<usize>,
}

/// Edge polynomial of `edge` for the support `sup`.
pub fn edge_polynomial(sup: &PAdicSupport, edge: &Edge) -> EdgePoly {
    let (l, phi_y) = residue_field(&sup.modulus);
    let mut terms = Vec::new();
    let mut phi = vec![l.zero(); edge.length + 1];
    for (&(i, j), d) in &sup.digits {
        if !edge.on_line((i, j)) || i < edge.start.0 || i > edge.end.0 {
            continue;
        }
        let c = reduce_digit(&l, &phi_y, d);
        let k = (i - edge.start.0) / edge.alpha;
        phi[edge.length - k] = c.clone();
        terms.push((i - edge.a, j - edge.b, c));
    }
    let poly = BiPoly::from_terms(&l, &terms);
    let dehomogenized = poly.eval_x(&l.one());
    let phi = UniPoly::new(&l, phi);
    let der = dehomogenized.derivative();
    let separable = !der.is_zero() && dehomogenized.gcd(&der).deg() == 0;
    let factor_count = factor_uni(&phi).ok().map(|f| f.factors.len());
    EdgePoly {
        edge: edge.clone(),
        field: l,
        poly,
        dehomogenized,
        phi,
        separable,
        factor_count,
    }
}

/// Polytope data at one place of the fiber `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceReport {
    /// The irreducible factor `P` of `F(0, y)`, or `None` for the place at infinity.
    pub place: Option<UniPoly>,
    /// Multiplicity of the place in `F(0, y)` (or `d_y - deg F(0, y)` at infinity).
    pub multiplicity: usize,
    pub convenient: bool,
    pub separable_place: bool,
    pub boundary: NewtonBoundary,
    pub edges: Vec<EdgePoly>,
    /// `s_i`: total number of irreducible factors of the edge polynomials.
    pub count: usize,
    /// `ℓ_i`: lattice length of the boundary.
    pub lattice_length: usize,
}

impl PlaceReport {
    fn degree(&self) -> usize {
        self.place.as_ref().map_or(1, |p| p.deg() as usize)
    }

    /// True when the place is convenient and all its edge polynomials are separable.
    pub fn nondegenerate(&self) -> bool {
        self.convenient && self.separable_place && self.edges.iter().all(|e| e.separable)
    }
}

/// Non-degeneracy report along the fiber `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub places: Vec<PlaceReport>,
    /// `s_F = Σ s_i + s_∞`.
    pub s_f: usize,
    /// `s̄_F = Σ ℓ_i deg P_i + ℓ_∞`.
    pub sbar_f: usize,
    pub nondegenerate: bool,
    /// False when some edge polynomial could not be factored; `s_f` then
    /// counts such edges by their lattice length.
    pub counts_exact: bool,
}

fn place_report(fp: &BiPoly, p: &UniPoly, place: Option<UniPoly>, mult: usize) -> PlaceReport {
    let sup = p_adic_expand(fp, p);
    let divisible_by_p = !sup.digits.keys().any(|&(_, j)| j == 0);
    let divisible_by_x = !sup.digits.keys().any(|&(i, _)| i == 0);
    let boundary = lower_hull(&sup.points());
    let edges: Vec<EdgePoly> = boundary.edges.iter().map(|e| edge_polynomial(&sup, e)).collect();
    let count = edges
        .iter()
        .map(|e| e.factor_count.unwrap_or(e.edge.length))
        .sum();
    let der = p.derivative();
    PlaceReport {
        place,
        multiplicity: mult,
        convenient: !divisible_by_p && !divisible_by_x,
        separable_place: !der.is_zero() && p.gcd(&der).deg() == 0,
        lattice_length: boundary.lattice_length(),
        boundary,
        edges,
        count,
    }
}

/// Polytope data of every place of `F` along `x = 0`, including infinity.
pub fn degeneracy_report(fp: &BiPoly) -> crate::Result<DegeneracyReport> {
    let f = fp.field();
    let f0 = fp.eval_x(&f.zero());
    let dy = fp.deg_y().max(0) as usize;
    let mut places = Vec::new();
    if !f0.is_zero() {
        for (p, m) in factor_uni(&f0)?.factors {
            places.push(place_report(fp, &p, Some(p.clone()), m));
        }
    }
    let d0 = f0.deg().max(0) as usize;
    if !f0.is_zero() && d0 < dy {
        let rev = fp.reverse_y(dy);
        places.push(place_report(&rev, &UniPoly::var(f), None, dy - d0));
    }
    let s_f = places.iter().map(|r| r.count).sum();
    let sbar_f = places.iter().map(|r| r.lattice_length * r.degree()).sum();
    let nondegenerate = !f0.is_zero() && places.iter().all(|r| r.nondegenerate());
    let counts_exact = places.iter().all(|r| r.edges.iter().all(|e| e.factor_count.is_some()));
    Ok(DegeneracyReport {
        places,
        s_f,
        sbar_f,
        nondegenerate,
        counts_exact,
    })
}

/// Outcome of [`polygon_irreducibility_certificate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Yes,
    Unknown,
}

/// Largest number of candidate summands examined by the indecomposability search.
const DECOMPOSITION_SEARCH_CAP: u64 = 1 << 20;

/// Certifies irreducibility of `F` from polytope data alone.
///
/// `Yes` when `F` is primitive with respect to `y` and either the fiber
/// `x = 0` has a single convenient place (infinity included) whose boundary
/// is one edge of lattice length 1, so that `F` has a single
/// analytic factor; or `F` is divisible by neither `x` nor `y` and its global
/// Newton polygon is integrally indecomposable, so that `F` is absolutely
/// irreducible.
pub fn polygon_irreducibility_certificate(fp: &BiPoly) -> Certificate {
    if fp.deg_y() < 1 || fp.content_y().deg() > 0 {
        return Certificate::Unknown;
    }
    if let Ok(rep) = degeneracy_report(fp) {
        if rep.places.len() == 1 && rep.places[0].convenient {
            let b = &rep.places[0].boundary;
            if b.edges.len() == 1 && b.edges[0].length == 1 {
                return Certificate::Yes;
            }
        }
    }
    let pts: Vec<(i64, i64)> = fp.terms().iter().map(|&(i, j, _)| (i as i64, j as i64)).collect();
    let divisible_by_x = pts.iter().all(|&(i, _)| i > 0);
    let divisible_by_y = pts.iter().all(|&(_, j)| j > 0);
    if divisible_by_x || divisible_by_y {
        return Certificate::Unknown;
    }
    if polygon_indecomposable(&pts) == Some(true) {
        Certificate::Yes
    } else {
        Certificate::Unknown
    }
}

/// Vertices of the convex hull in counter-clockwise order (monotone chain).
fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Integral indecomposability of the convex hull of `points`: the polygon
/// with primitive edge vectors `e_i` of lattice lengths `n_i` decomposes iff
/// some `m_i ∈ [0, n_i]`, neither all zero nor all maximal, gives
/// `Σ m_i e_i = 0`. `None` when the search exceeds its cap.
pub fn polygon_indecomposable(points: &[(i64, i64)]) -> Option<bool> {
    let hull = convex_hull(points);
    if hull.len() <= 1 {
        return Some(false);
    }
    let mut edges = Vec::new();
    for k in 0..hull.len() {
        let a = hull[k];
        let b = hull[(k + 1) % hull.len()];
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let g = dx.gcd(&dy);
        edges.push(((dx / g, dy / g), g));
    }
    let total: u64 = edges.iter().map(|&(_, n)| n as u64 + 1).product();
    if total > DECOMPOSITION_SEARCH_CAP {
        return None;
    }
    let mut m = vec![0i64; edges.len()];
    loop {
        let mut k = 0;
        while k < m.len() {
            if m[k] < edges[k].1 {
                m[k] += 1;
                break;
            }
            m[k] = 0;
            k += 1;
        }
        if k == m.len() {
            return Some(true);
        }
        let full = m.iter().zip(&edges).all(|(&mi, &(_, n))| mi == n);
        if full {
            continue;
        }
        let sx: i64 = m.iter().zip(&edges).map(|(&mi, &((ex, _), _))| mi * ex).sum();
        let sy: i64 = m.iter().zip(&edges).map(|(&mi, &((_, ey), _))| mi * ey).sum();
        if sx == 0 && sy == 0 {
            return Some(false);
        }
    }
}
