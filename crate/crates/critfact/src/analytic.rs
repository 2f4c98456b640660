//! Truncated analytic factorization of `F` in `K[[x]][y]`.
//!
//! On a regular fiber (`F(0, y)` separable of degree `d_y`) the factorization
//! of `F(0, y)` is lifted by multifactor Hensel lifting. Otherwise every place
//! of the fiber `x = 0`, that is every irreducible factor of `F(0, y)` and the
//! place at infinity, is expanded by a rational Newton–Puiseux recursion: each
//! edge of the Newton polygon and each irreducible factor of its edge
//! polynomial gives a monomial change of variables, until the branch is smooth
//! and Newton iteration applies. Residue fields are kept as simple extensions
//! of `K`, towers being flattened with a primitive element. The analytic
//! factor of a branch over `K` is the characteristic polynomial of the
//! multiplication by its parametrization.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx};
use crate::linalg::{charpoly_berkowitz, solve_columns};
use crate::polyring::{series_divrem, valx_disc, BiPoly, TruncBi, UniPoly};
use crate::polytope::{lower_hull, residue_field, Edge};
use crate::unifactor::factor_uni;

/// Bound on the number of nested changes of variables along one branch.
const MAX_DEPTH: usize = 256;
/// Largest residue field degree over `Q`.
pub const TOWER_CAP_RATIONALS: usize = 24;
/// Largest residue field degree over a finite field.
pub const TOWER_CAP_FINITE: usize = 512;

/// Place of the fiber `x = 0` a factor belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// Irreducible factor of `F(0, y)`.
    Finite(UniPoly),
    Infinity,
}

/// A rational analytic factor seen over its residue field `L = K[z]/(p)`:
/// `poly` has coefficients in `L` and its norm down to `K` is the factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsoluteBranch {
    pub field: FieldCtx,
    /// Monic minimal polynomial over `K` of the generator of `field` (`z` when `L = K`).
    pub minpoly: UniPoly,
    /// Truncated modulo `x^{n+1}`, leading coefficient a power of `x`.
    pub poly: BiPoly,
}

/// One irreducible factor of `F` in `K[[x]][y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyticFactor {
    /// Truncated modulo `x^{n+1}`; leading `y`-coefficient `x^{n_i}`.
    pub poly: BiPoly,
    pub n_i: usize,
    pub d: usize,
    pub place: Place,
    /// Ramification index.
    pub e: usize,
    /// Residue degree.
    pub f: usize,
    pub absolute: Option<AbsoluteBranch>,
}

/// `F ≡ u·Π 𝓕_i mod x^{n+1}` with `u(0) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyticFactors {
    /// The truncation order `n`: everything is known modulo `x^{n+1}`.
    pub precision: usize,
    pub unit: UniPoly,
    pub factors: Vec<AnalyticFactor>,
}

impl AnalyticFactors {
    /// Number `s` of analytic factors.
    pub fn s(&self) -> usize {
        self.factors.len()
    }

    /// Number `s̄ = Σ f_i` of analytic factors over the algebraic closure.
    pub fn sbar(&self) -> usize {
        self.factors.iter().map(|f| f.f).sum()
    }

    /// Factor `i` as an element of `(K[x]/(x^{n+1}))[y]`.
    pub fn truncated(&self, i: usize) -> TruncBi {
        TruncBi::new(&self.factors[i].poly, self.precision + 1)
    }

    /// `u·Π 𝓕_i mod x^{n+1}`.
    pub fn product(&self) -> BiPoly {
        let n = self.precision + 1;
        let mut p = BiPoly::from_x_poly(&self.unit);
        for f in &self.factors {
            p = p.mul_trunc(&f.poly, n);
        }
        p
    }

    /// Degrees `d_i`.
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.d).collect()
    }
}

// ---------------------------------------------------------------------------
// residue fields

fn degree_over(k: &FieldCtx, l: &FieldCtx) -> usize {
    if l == k {
        1
    } else {
        l.ext_degree()
    }
}

fn coords_over(k: &FieldCtx, l: &FieldCtx, a: &Elem) -> Vec<Elem> {
    if l == k {
        vec![a.clone()]
    } else {
        l.ext_coeffs(a)
    }
}

/// Embedding of `from` into `to`, both simple extensions of `K` (or `K`);
/// `tau` is the image of the generator of `from`.
struct Embedding {
    from: FieldCtx,
    to: FieldCtx,
    tau: Elem,
}

impl Embedding {
    fn identity(l: &FieldCtx) -> Self {
        Embedding {
            from: l.clone(),
            to: l.clone(),
            tau: l.zero(),
        }
    }

    fn apply(&self, k: &FieldCtx, a: &Elem) -> Elem {
        if self.from == self.to {
            return a.clone();
        }
        if &self.from == k {
            return self.to.embed(a);
        }
        let to = &self.to;
        let mut r = to.zero();
        for c in self.from.ext_coeffs(a).iter().rev() {
            r = to.add(&to.mul(&r, &self.tau), &to.embed(c));
        }
        r
    }
}

/// Adjoins a root of the irreducible `g ∈ L[T]` to `L`, returning the
/// embedding of `L` into the flattened field and the root.
fn adjoin(k: &FieldCtx, l: &FieldCtx, g: &UniPoly) -> Result<(Embedding, Elem)> {
    let g = g.monic();
    if g.deg() == 1 {
        return Ok((Embedding::identity(l), l.neg(&g.coeff(0))));
    }
    let d1 = degree_over(k, l);
    let d2 = g.deg() as usize;
    let dd = d1 * d2;
    let cap = if k.characteristic() == 0 {
        TOWER_CAP_RATIONALS
    } else {
        TOWER_CAP_FINITE
    };
    if dd > cap {
        return Err(Error::TowerTooDeep(cap));
    }
    if l == k {
        let l2 = FieldCtx::extension_unchecked(k, g.coeffs().to_vec(), "t");
        let theta = l2.gen();
        return Ok((
            Embedding {
                from: l.clone(),
                tau: l2.zero(),
                to: l2,
            },
            theta,
        ));
    }
    let tw = FieldCtx::extension_unchecked(l, g.coeffs().to_vec(), "s");
    let flat = |a: &Elem| -> Vec<Elem> { tw.ext_coeffs(a).iter().flat_map(|c| l.ext_coeffs(c)).collect() };
    let s = tw.gen();
    let t = tw.embed(&l.gen());
    let attempt = |w: &Elem| -> Option<(Embedding, Elem)> {
        let mut pw = vec![tw.one()];
        for _ in 0..dd {
            pw.push(tw.mul(pw.last().unwrap(), w));
        }
        let cols: Vec<Vec<Elem>> = pw[..dd].iter().map(&flat).collect();
        let sol = solve_columns(k, &cols, &[flat(&pw[dd]), flat(&t), flat(&s)])?;
        let mut r: Vec<Elem> = sol[0].iter().map(|c| k.neg(c)).collect();
        r.push(k.one());
        let l2 = FieldCtx::extension_unchecked(k, r, "t");
        let tau = l2.from_ext_coeffs(sol[1].clone());
        let theta = l2.from_ext_coeffs(sol[2].clone());
        Some((
            Embedding {
                from: l.clone(),
                to: l2,
                tau,
            },
            theta,
        ))
    };
    for idx in 1..64u64 {
        let Some(lam) = k.element_at(idx) else { break };
        let w = tw.add(&s, &tw.mul(&tw.embed(&l.embed(&lam)), &t));
        if let Some(r) = attempt(&w) {
            return Ok(r);
        }
    }
    if k.characteristic() > 0 {
        for idx in 2..4096u64 {
            let Some(w) = tw.element_at(idx) else { break };
            if let Some(r) = attempt(&w) {
                return Ok(r);
            }
        }
    }
    Err(Error::Internal("no primitive element found".into()))
}

// ---------------------------------------------------------------------------
// Newton–Puiseux recursion

/// Local data along a branch: `x = γ·T^e`, `y = Y0(T) + c·T^E·Y` where `Y`
/// is the variable of `h(T, Y)`.
#[derive(Clone)]
struct Local {
    l: FieldCtx,
    h: BiPoly,
    gamma: Elem,
    e: usize,
    y0: UniPoly,
    c: Elem,
    big_e: usize,
}

/// A smooth branch: `x = γ·T^e`, `y = y(T)` known modulo `T^{e·N}`.
struct Leaf {
    l: FieldCtx,
    e: usize,
    gamma: Elem,
    y: UniPoly,
}

fn bezout(alpha: usize, beta: usize) -> (usize, usize) {
    for u in 1..=alpha {
        if (u * beta) % alpha == 1 % alpha {
            return (u, (u * beta - 1) / alpha);
        }
    }
    unreachable!("alpha and beta are coprime")
}

/// `φ(T) = Σ_k c_k T^{ℓ-k}` for the points `start + k(alpha, -beta)`.
fn edge_phi(h: &BiPoly, edge: &Edge) -> UniPoly {
    let l = h.field();
    let c = (0..=edge.length)
        .map(|k| {
            let kk = edge.length - k;
            h.coeff(edge.start.0 + kk * edge.alpha, edge.start.1 - kk * edge.beta)
        })
        .collect();
    UniPoly::new(l, c)
}

/// `h(θ^v X^β, X^α(θ^u + Y)) / X^{βi_1 + αj_1}` together with the updated
/// branch data.
fn transform(k: &FieldCtx, st: &Local, emb: &Embedding, edge: &Edge, theta: &Elem, nprec: usize) -> Local {
    let l2 = emb.to.clone();
    let map = |a: &Elem| emb.apply(k, a);
    let h = st.h.map(&l2, map);
    let (alpha, beta) = (edge.alpha, edge.beta);
    let (u, v) = bezout(alpha, beta);
    let shift = beta * edge.start.0 + alpha * edge.start.1;
    let th_u = l2.pow(theta, u as u64);
    let th_v = l2.pow(theta, v as u64);
    let dy = h.deg_y().max(0) as usize;
    let lin = UniPoly::new(&l2, vec![th_u.clone(), l2.one()]);
    let mut binom = vec![UniPoly::one(&l2)];
    for j in 1..=dy {
        binom.push(binom[j - 1].mul(&lin));
    }
    let mut acc: Vec<Vec<Elem>> = vec![Vec::new(); dy + 1];
    let mut thv_pow: Vec<Elem> = vec![l2.one()];
    for (i, j, a) in h.terms() {
        while thv_pow.len() <= i {
            let nx = l2.mul(thv_pow.last().unwrap(), &th_v);
            thv_pow.push(nx);
        }
        let xe = beta * i + alpha * j - shift;
        let coef = l2.mul(&a, &thv_pow[i]);
        for (jj, b) in binom[j].coeffs().iter().enumerate() {
            if l2.is_zero(b) {
                continue;
            }
            let row = &mut acc[jj];
            if row.len() <= xe {
                row.resize(xe + 1, l2.zero());
            }
            row[xe] = l2.add(&row[xe], &l2.mul(&coef, b));
        }
    }
    let h = BiPoly::new(&l2, acc.into_iter().map(|r| UniPoly::new(&l2, r)).collect());
    let gamma = map(&st.gamma);
    let c = map(&st.c);
    let y0 = st.y0.map(&l2, map);
    let e2 = beta * st.e;
    let e_big2 = beta * st.big_e + alpha;
    let limit = e2 * nprec;
    let mut y0c = vec![l2.zero(); limit.max(1)];
    let mut p = l2.one();
    for (kk, a) in y0.coeffs().iter().enumerate() {
        if beta * kk < limit {
            y0c[beta * kk] = l2.mul(a, &p);
        }
        p = l2.mul(&p, &th_v);
    }
    let thv_e = l2.pow(&th_v, st.e as u64);
    let thv_big = l2.pow(&th_v, st.big_e as u64);
    if e_big2 < limit {
        let t = l2.mul(&c, &l2.mul(&thv_big, &th_u));
        y0c[e_big2] = l2.add(&y0c[e_big2], &t);
    }
    Local {
        gamma: l2.mul(&gamma, &thv_e),
        e: e2,
        y0: UniPoly::new(&l2, y0c),
        c: l2.mul(&c, &thv_big),
        big_e: e_big2,
        l: l2,
        h,
    }
}

/// Root `Y(X)` of `h` with `Y(0) = 0`, modulo `X^need`; requires `∂_Y h(0, 0) ≠ 0`.
fn newton_root(h: &BiPoly, need: usize) -> Result<UniPoly> {
    let l = h.field();
    let mut y = UniPoly::zero(l);
    if need == 0 {
        return Ok(y);
    }
    let hy = h.deriv_y();
    let mut prec = 1;
    while prec < need {
        prec = (2 * prec).min(need);
        let num = h.eval_y_series(&y, prec);
        let den = hy.eval_y_series(&y, prec).inv_series(prec)?;
        y = y.sub(&num.mul_trunc(&den, prec));
    }
    Ok(y)
}

fn finish_leaf(st: &Local, y_leaf: &UniPoly, nprec: usize) -> Leaf {
    let l = &st.l;
    let limit = st.e * nprec;
    let y = st
        .y0
        .add(&y_leaf.shift(st.big_e).scale(&st.c))
        .truncate(limit);
    Leaf {
        l: l.clone(),
        e: st.e,
        gamma: st.gamma.clone(),
        y,
    }
}

/// Collects the smooth branches of `st` in `out`. The branch that would
/// land at index `skip` keeps an empty expansion.
fn expand(
    k: &FieldCtx,
    st: Local,
    m: usize,
    nprec: usize,
    depth: usize,
    skip: Option<usize>,
    out: &mut Vec<Leaf>,
) -> Result<()> {
    let mut st = st;
    let mut m = m;
    while m > 0 && st.h.cy(0).is_zero() {
        out.push(finish_leaf(&st, &UniPoly::zero(&st.l), nprec));
        st.h = BiPoly::from_y_coeffs(&st.l, st.h.y_coeffs()[1..].to_vec());
        m -= 1;
    }
    if m == 0 {
        return Ok(());
    }
    if m == 1 {
        let need = if skip == Some(out.len()) {
            0
        } else {
            (st.e * nprec).saturating_sub(st.big_e)
        };
        let y = newton_root(&st.h, need)?;
        out.push(finish_leaf(&st, &y, nprec));
        return Ok(());
    }
    if depth > MAX_DEPTH {
        return Err(Error::SmallCharacteristicUnsupported(
            "Newton-Puiseux expansion does not terminate".into(),
        ));
    }
    let pts: Vec<(usize, usize)> = st.h.terms().iter().map(|&(i, j, _)| (i, j)).collect();
    let p = k.characteristic();
    for edge in lower_hull(&pts).edges {
        if p > 0 && edge.beta as u64 % p == 0 {
            return Err(Error::SmallCharacteristicUnsupported(format!(
                "ramification index {} divisible by the characteristic {p}",
                edge.beta
            )));
        }
        let phi = edge_phi(&st.h, &edge);
        for (g, mu) in factor_uni(&phi)?.factors {
            let (emb, theta) = adjoin(k, &st.l, &g)?;
            let child = transform(k, &st, &emb, &edge, &theta, nprec);
            expand(k, child, mu, nprec, depth + 1, skip, out)?;
        }
    }
    Ok(())
}

/// Matrix of the multiplication by `y(T)` on `{t^a T^r}` over `K[x]/(x^N)`
/// (or on `{T^r}` over `L[x]/(x^N)` when `over_k` is false).
fn leaf_norm(k: &FieldCtx, leaf: &Leaf, nprec: usize, over_k: bool) -> BiPoly {
    let l = &leaf.l;
    let out = if over_k { k } else { l };
    let f = if over_k { degree_over(k, l) } else { 1 };
    let e = leaf.e;
    let dim = f * e;
    let ginv = l.inv(&leaf.gamma).expect("nonzero gamma");
    let mut gpow = vec![l.one()];
    for q in 1..nprec {
        gpow.push(l.mul(&gpow[q - 1], &ginv));
    }
    let t = if l == k { l.one() } else { l.gen() };
    let mut tpow = vec![l.one()];
    for a in 1..f {
        tpow.push(l.mul(&tpow[a - 1], &t));
    }
    let mut dense = vec![vec![vec![out.zero(); nprec]; dim]; dim];
    for (a, ta) in tpow.iter().enumerate() {
        for r in 0..e {
            let col = a * e + r;
            for (kk, yk) in leaf.y.coeffs().iter().enumerate() {
                if l.is_zero(yk) {
                    continue;
                }
                let idx = kk + r;
                let q = idx / e;
                if q >= nprec {
                    continue;
                }
                let rr = idx % e;
                let val = l.mul(&l.mul(yk, ta), &gpow[q]);
                let cs = if over_k { coords_over(k, l, &val) } else { vec![val] };
                for (a2, cv) in cs.iter().enumerate() {
                    let cell = &mut dense[a2 * e + rr][col][q];
                    *cell = out.add(cell, cv);
                }
            }
        }
    }
    let m: Vec<Vec<UniPoly>> = dense
        .into_iter()
        .map(|row| row.into_iter().map(|c| UniPoly::new(out, c)).collect())
        .collect();
    let zero = UniPoly::zero(out);
    let one = UniPoly::one(out);
    let cp = charpoly_berkowitz(&m, &zero, &one, |a, b| a.add(b), |a, b| a.mul_trunc(b, nprec), |a| a.neg());
    BiPoly::new(out, cp)
}

/// `y^d G(x, 1/y) / w` where `G(0) = x^v·w`; returns the result and `v`.
fn normalize_reversed(g: &BiPoly, nprec: usize) -> Result<(BiPoly, usize)> {
    let d = g.deg_y().max(0) as usize;
    let g0 = g.cy(0);
    let v = g0
        .val()
        .ok_or_else(|| Error::Internal("branch at infinity with zero constant term".into()))?;
    let w = g0.unshift(v);
    let winv = w.inv_series(nprec)?;
    Ok((g.reverse_y(d).mul_x_poly_trunc(&winv, nprec), v))
}

fn minpoly_of(k: &FieldCtx, l: &FieldCtx) -> UniPoly {
    if l == k {
        UniPoly::var(k)
    } else {
        UniPoly::new(k, l.modulus().unwrap().to_vec())
    }
}

/// Branch data at the start of the expansion at the place `y = ξ`.
fn place_local(h: BiPoly, l: FieldCtx, xi: Elem) -> Local {
    Local {
        h,
        gamma: l.one(),
        e: 1,
        y0: UniPoly::constant(&l, xi),
        c: l.one(),
        big_e: 0,
        l,
    }
}

fn factors_of_place(
    k: &FieldCtx,
    h: BiPoly,
    l: FieldCtx,
    xi: Elem,
    m: usize,
    nprec: usize,
    place: Place,
    keep_abs: bool,
) -> Result<Vec<AnalyticFactor>> {
    let infinite = place == Place::Infinity;
    let mut leaves = Vec::new();
    expand(k, place_local(h, l, xi), m, nprec, 0, None, &mut leaves)?;
    let target = nprec;
    let mut out = Vec::new();
    for leaf in &leaves {
        let g = leaf_norm(k, leaf, nprec, true);
        let fdeg = degree_over(k, &leaf.l);
        let absolute = if keep_abs {
            let gl = leaf_norm(k, leaf, nprec, false);
            Some((gl, minpoly_of(k, &leaf.l), leaf.l.clone()))
        } else {
            None
        };
        let (poly, n_i, absolute) = if infinite {
            let (p, v) = normalize_reversed(&g, target)?;
            let abs = match absolute {
                Some((gl, mp, fl)) => Some(AbsoluteBranch {
                    poly: normalize_reversed(&gl, target)?.0,
                    minpoly: mp,
                    field: fl,
                }),
                None => None,
            };
            (p, v, abs)
        } else {
            let abs = absolute.map(|(gl, mp, fl)| AbsoluteBranch {
                poly: gl,
                minpoly: mp,
                field: fl,
            });
            (g, 0, abs)
        };
        out.push(AnalyticFactor {
            d: leaf.e * fdeg,
            poly,
            n_i,
            place: place.clone(),
            e: leaf.e,
            f: fdeg,
            absolute,
        });
    }
    Ok(out)
}

/// Analytic factors at the finite place `p` of multiplicity `m`, where `g`
/// is the monic factor of `F` lifted from `p^m`. The costliest branch is not
/// expanded: its factor is `g` divided by the factors of the other branches.
fn factors_of_lifted_place(
    k: &FieldCtx,
    fp: &BiPoly,
    g: &BiPoly,
    p: UniPoly,
    m: usize,
    nprec: usize,
) -> Result<Vec<AnalyticFactor>> {
    let (l, xi) = residue_field(&p);
    let h = fp.embed(&l).shift_y_by(&xi);
    let mut probe = Vec::new();
    expand(k, place_local(h.clone(), l.clone(), xi.clone()), m, 1, 0, None, &mut probe)?;
    let cost = |leaf: &Leaf| leaf.e * degree_over(k, &leaf.l);
    let skip = (0..probe.len()).max_by_key(|&i| (cost(&probe[i]), std::cmp::Reverse(i))).unwrap_or(0);
    let mut leaves = Vec::new();
    if probe.len() > 1 {
        expand(k, place_local(h, l, xi), m, nprec, 0, Some(skip), &mut leaves)?;
        if leaves.len() != probe.len() {
            return Err(Error::Internal("branch structure depends on the precision".into()));
        }
    }
    let mut out = Vec::with_capacity(probe.len());
    let mut others = BiPoly::one(k);
    for (i, leaf) in leaves.iter().enumerate() {
        if i == skip {
            continue;
        }
        let poly = leaf_norm(k, leaf, nprec, true);
        others = others.mul_trunc(&poly, nprec);
        out.push((i, poly, leaf.e, degree_over(k, &leaf.l)));
    }
    let (rest, rem) = series_divrem(&g.truncate_x(nprec), &others, &UniPoly::var(k), nprec)?;
    if !rem.is_zero() {
        return Err(Error::Internal("branch factors do not divide the place factor".into()));
    }
    out.push((skip, rest, probe[skip].e, degree_over(k, &probe[skip].l)));
    out.sort_by_key(|t| t.0);
    Ok(out
        .into_iter()
        .map(|(_, poly, e, f)| AnalyticFactor {
            poly,
            n_i: 0,
            d: e * f,
            place: Place::Finite(p.clone()),
            e,
            f,
            absolute: None,
        })
        .collect())
}

/// Lifts `F ≡ lc(F)·Π G_i mod x`, with monic pairwise coprime `G_i ∈ K[y]`
/// and `lc(F)(0) ≠ 0`, to monic factors modulo `x^N`.
pub fn hensel_lift(fp: &BiPoly, g0: &[UniPoly], nprec: usize) -> Result<Vec<BiPoly>> {
    let k = fp.field();
    let lc = fp.lc_y();
    let lcinv = lc.inv_series(nprec).map_err(|_| Error::LeadingCoeffNotUnit)?;
    let fm = fp.mul_x_poly_trunc(&lcinv, nprec);
    let r = g0.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    // s_i = (Π_{j≠i} G_j)^{-1} mod G_i
    let mut s = Vec::with_capacity(r);
    for i in 0..r {
        let mut others = UniPoly::one(k);
        for (j, g) in g0.iter().enumerate() {
            if j != i {
                others = others.mul(g);
            }
        }
        s.push(
            others
                .rem(&g0[i])
                .inv_mod(&g0[i])
                .ok_or_else(|| Error::Internal("Hensel lifting needs coprime factors".into()))?,
        );
    }
    // g[i][t] is the coefficient of x^t in G_i and pre[j][t] the one of G_1⋯G_j
    let mut g: Vec<Vec<UniPoly>> = g0.iter().map(|p| vec![p.clone()]).collect();
    let mut pre: Vec<Vec<UniPoly>> = vec![vec![UniPoly::one(k)]; r + 1];
    for j in 1..=r {
        pre[j][0] = pre[j - 1][0].mul(&g0[j - 1]);
    }
    for kk in 1..nprec {
        for gi in g.iter_mut() {
            gi.push(UniPoly::zero(k));
        }
        prefix_level(&mut pre, &g, kk);
        let err = fm.cx(kk).sub(&pre[r][kk]);
        if err.is_zero() {
            continue;
        }
        for i in 0..r {
            g[i][kk] = err.mul(&s[i]).rem(&g0[i]);
        }
        prefix_level(&mut pre, &g, kk);
    }
    Ok(g
        .into_iter()
        .map(|cs| BiPoly::from_y_coeffs(k, cs).transpose())
        .collect())
}

/// Sets `pre[j][kk] = Σ_s pre[j-1][s]·g[j-1][kk-s]` for `j = 1, …, r`.
fn prefix_level(pre: &mut [Vec<UniPoly>], g: &[Vec<UniPoly>], kk: usize) {
    let k = g[0][0].field().clone();
    for j in 1..pre.len() {
        let mut acc = UniPoly::zero(&k);
        if j == 1 {
            acc = g[0][kk].clone();
        } else {
            for s0 in 0..=kk {
                let a = pre[j - 1].get(s0);
                let b = &g[j - 1][kk - s0];
                if let Some(a) = a {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
            }
        }
        if pre[j].len() <= kk {
            pre[j].push(acc);
        } else {
            pre[j][kk] = acc;
        }
    }
    if pre[0].len() <= kk {
        pre[0].push(UniPoly::zero(&k));
    }
}

fn cmp_factor(k: &FieldCtx, a: &AnalyticFactor, b: &AnalyticFactor, nprec: usize) -> Ordering {
    a.d.cmp(&b.d).then(a.n_i.cmp(&b.n_i)).then_with(|| {
        for j in 0..=a.d {
            for i in 0..nprec {
                let o = k.cmp_elem(&a.poly.coeff(i, j), &b.poly.coeff(i, j));
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
        Ordering::Equal
    })
}

/// Normalized `n`-truncated analytic factorization of a `y`-primitive,
/// separable `F` (everything modulo `x^{n+1}`).
pub fn analytic_factor(fp: &BiPoly, n: usize) -> Result<AnalyticFactors> {
    factor_impl(fp, n, false)
}

/// Same factors as [`analytic_factor`], each carrying its residue field and
/// its factor over that field.
pub fn absolute_analytic(fp: &BiPoly, n: usize) -> Result<AnalyticFactors> {
    factor_impl(fp, n, true)
}

/// Continues a factorization to the truncation order `n2 ≥ n`.
pub fn raise_precision(af: &AnalyticFactors, fp: &BiPoly, n2: usize) -> Result<AnalyticFactors> {
    if n2 == af.precision {
        return Ok(af.clone());
    }
    let keep_abs = af.factors.iter().any(|f| f.absolute.is_some());
    factor_impl(fp, n2, keep_abs)
}

/// `q = ⌊v/d⌋` with `v = val_x Disc_y(F)` and `d` the least degree of an analytic factor.
pub fn q_bound(fp: &BiPoly, af: &AnalyticFactors) -> Result<usize> {
    let v = valx_disc(fp).ok_or(Error::Inseparable)?;
    let d = af.factors.iter().map(|f| f.d).min().unwrap_or(1).max(1);
    Ok(v / d)
}

fn factor_impl(fp: &BiPoly, n: usize, keep_abs: bool) -> Result<AnalyticFactors> {
    let k = fp.field().clone();
    let dy = fp.deg_y();
    if dy < 1 {
        return Err(Error::InvalidInput("analytic factorization needs deg_y F ≥ 1".into()));
    }
    let dy = dy as usize;
    let Some(vdisc) = valx_disc(fp) else {
        return Err(Error::Inseparable);
    };
    let f0 = fp.eval_x(&k.zero());
    if f0.is_zero() {
        return Err(Error::InvalidInput("F must be primitive with respect to y".into()));
    }
    let nprec = n + 1;
    let lc = fp.lc_y();
    let vl = lc.val().unwrap();
    let unit = lc.unshift(vl).truncate(nprec);
    let d0 = f0.deg() as usize;
    let der = f0.derivative();
    let regular = d0 == dy && !der.is_zero() && f0.gcd(&der).deg() == 0;
    let mut factors = Vec::new();
    if regular && !keep_abs {
        let places = factor_uni(&f0)?.irreducibles();
        let lifted = hensel_lift(fp, &places, nprec)?;
        for (g, p) in lifted.into_iter().zip(places) {
            let d = p.deg() as usize;
            factors.push(AnalyticFactor {
                poly: g,
                n_i: 0,
                d,
                place: Place::Finite(p),
                e: 1,
                f: d,
                absolute: None,
            });
        }
    } else if d0 == dy && !keep_abs {
        // Split the places apart first, then expand only the multiple ones.
        let fac = factor_uni(&f0)?.factors;
        let g0: Vec<UniPoly> = fac.iter().map(|(p, m)| p.pow(*m as u64)).collect();
        let lifted = hensel_lift(fp, &g0, nprec + vdisc)?;
        for (g, (p, m)) in lifted.into_iter().zip(fac) {
            if m == 1 {
                let d = p.deg() as usize;
                factors.push(AnalyticFactor {
                    poly: g.truncate_x(nprec),
                    n_i: 0,
                    d,
                    place: Place::Finite(p),
                    e: 1,
                    f: d,
                    absolute: None,
                });
            } else {
                factors.extend(factors_of_lifted_place(&k, fp, &g, p, m, nprec)?);
            }
        }
    } else {
        for (p, m) in factor_uni(&f0)?.factors {
            let (l, xi) = residue_field(&p);
            let h = fp.embed(&l).shift_y_by(&xi);
            factors.extend(factors_of_place(&k, h, l, xi, m, nprec, Place::Finite(p), keep_abs)?);
        }
        if d0 < dy {
            let dx = fp.deg_x().max(0) as usize;
            let rev = fp.reverse_y(dy);
            let mut inf = factors_of_place(&k, rev, k.clone(), k.zero(), dy - d0, nprec + dx, Place::Infinity, keep_abs)?;
            for f in inf.iter_mut() {
                f.poly = f.poly.truncate_x(nprec);
                if let Some(a) = f.absolute.as_mut() {
                    a.poly = a.poly.truncate_x(nprec);
                }
            }
            factors.extend(inf);
        }
    }
    factors.sort_by(|a, b| cmp_factor(&k, a, b, nprec));
    let af = AnalyticFactors {
        precision: n,
        unit,
        factors,
    };
    let total: usize = af.factors.iter().map(|f| f.d).sum();
    if total != dy || af.product() != fp.truncate_x(nprec) {
        return Err(Error::Internal("analytic factors do not multiply back to F".into()));
    }
    Ok(af)
}
