//! Absolute factorization.
//!
//! The factors of `F` over the algebraic closure are represented by pairs
//! `(P_k, q_k)`: `q_k ∈ K[z]` monic separable and `P_k(x, y, φ)` an absolute
//! factor for every root `φ` of `q_k`. Recombination runs over `K` on the
//! coefficients of `z^j` in `hat𝒫_k ∂_y 𝒫_k`, where `𝒫_k` is an analytic
//! factor over its residue field `K[z]/(p_k)`. The pairs themselves come from
//! a residue separation along a regular fiber, a partial fraction
//! decomposition over `K[z]/(q_k)` and Hensel lifting.

use crate::analytic::{absolute_analytic, q_bound, AnalyticFactors};
use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx};
use crate::linalg::{charpoly_berkowitz, kernel_reb, solve_columns, SubspaceBasis};
use crate::polyring::{discriminant_y, resultant_y, valx_disc, BiPoly, MoebiusRecord, TruncBi, UniPoly};
use crate::recombine::{choose_modulus, da_columns, linear_system, solve_recombination};
use crate::unifactor::{factor_uni, first_irreducible};

/// Whether linear algebra over `K` computes `V_K` (characteristic zero or
/// `p > d_x(2d_y − 1)`).
pub fn large_characteristic(k: &FieldCtx, dx: usize, dy: usize) -> bool {
    let p = k.characteristic();
    p == 0 || p > (dx * (2 * dy).saturating_sub(1)) as u64
}

/// One family of conjugate absolute factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsPair {
    /// Monic, separable, in `K[z]`; `z` itself for a factor defined over `K`.
    pub q: UniPoly,
    /// `K[z]/(q)`, or `K` when `q = z`.
    pub field: FieldCtx,
    /// `P(x, y, z)` as a polynomial over `field`.
    pub poly: BiPoly,
}

impl AbsPair {
    fn rational(p: BiPoly) -> Self {
        let k = p.field().clone();
        AbsPair {
            q: UniPoly::var(&k),
            field: k,
            poly: p,
        }
    }

    /// Number of absolute factors represented.
    pub fn degree(&self) -> usize {
        self.q.deg().max(0) as usize
    }

    /// `Π_{q(φ)=0} P(x, y, φ) ∈ K[x, y]`.
    pub fn norm(&self, k: &FieldCtx) -> BiPoly {
        norm_down(k, &self.field, &self.poly)
    }

    /// Terms `(i, j, t, c)` of `P = Σ c·x^i y^j z^t` with `c ∈ K`.
    pub fn terms_xyz(&self, k: &FieldCtx) -> Vec<(usize, usize, usize, Elem)> {
        let mut out = Vec::new();
        for (i, j, a) in self.poly.terms() {
            if self.field == *k {
                out.push((i, j, 0, a));
                continue;
            }
            for (t, c) in self.field.ext_coeffs(&a).into_iter().enumerate() {
                if !k.is_zero(&c) {
                    out.push((i, j, t, c));
                }
            }
        }
        out
    }
}

/// The norm of `P ∈ L[x, y]` down to `K[x, y]`, for `L = K` or a simple
/// extension of `K`: the determinant of multiplication by `P`.
pub fn norm_down(k: &FieldCtx, l: &FieldCtx, p: &BiPoly) -> BiPoly {
    if l == k {
        return p.clone();
    }
    let f = l.ext_degree();
    let g = l.gen();
    let mut zc = l.one();
    let mut cols: Vec<Vec<BiPoly>> = Vec::with_capacity(f);
    for _ in 0..f {
        let pc = p.scale(&zc);
        let mut comps = vec![Vec::new(); f];
        for (i, j, a) in pc.terms() {
            for (t, c) in l.ext_coeffs(&a).into_iter().enumerate() {
                comps[t].push((i, j, c));
            }
        }
        cols.push(comps.iter().map(|ts| BiPoly::from_terms(k, ts)).collect());
        zc = l.mul(&zc, &g);
    }
    let m: Vec<Vec<BiPoly>> = (0..f).map(|r| (0..f).map(|c| cols[c][r].clone()).collect()).collect();
    let cp = charpoly_berkowitz(
        &m,
        &BiPoly::zero(k),
        &BiPoly::one(k),
        |a, b| a.add(b),
        |a, b| a.mul(b),
        |a| a.neg(),
    );
    if f % 2 == 0 {
        cp[0].clone()
    } else {
        cp[0].neg()
    }
}

/// Absolute factorization `F = unit·Π_k Π_{q_k(φ)=0} P_k(x, y, φ)`.
#[derive(Clone, Debug)]
pub struct AbsFactorization {
    pub unit: Elem,
    pub pairs: Vec<AbsPair>,
    pub trace: AbsTrace,
}

impl AbsFactorization {
    /// Number `r̄` of absolute factors, content included.
    pub fn count(&self) -> usize {
        self.pairs.iter().map(AbsPair::degree).sum()
    }

    /// `unit·Π norms`.
    pub fn expand(&self, k: &FieldCtx) -> BiPoly {
        let mut p = BiPoly::constant(k, self.unit.clone());
        for pair in &self.pairs {
            p = p.mul(&pair.norm(k));
        }
        p
    }
}

/// Intermediate data of an absolute run.
#[derive(Clone, Debug, Default)]
pub struct AbsTrace {
    pub d_x: usize,
    pub d_y: usize,
    /// Number of rational analytic factors.
    pub s: usize,
    /// Number `s̄ = Σ f_i` of absolute analytic factors.
    pub sbar: usize,
    pub moebius: Option<Elem>,
    pub dim_v: Option<usize>,
    pub dim_z: Option<usize>,
    pub dim_w: Option<usize>,
    pub q: Option<usize>,
    /// Regular fiber `x = α`.
    pub alpha: Option<Elem>,
    /// Separating combination of the residues.
    pub separator: Vec<Elem>,
    pub method: String,
}

/// Result of [`abs_count`].
#[derive(Clone, Debug)]
pub struct AbsCount {
    pub count: usize,
    pub trace: AbsTrace,
}

/// The coefficients of `z^j` in `[hat𝒫_k ∂_y 𝒫_k]^{hi}_{lo}`, in the order
/// `(k, j)`; every factor must carry its residue-field branch and be monic
/// in `y`. Requires precision `≥ hi − 1`.
pub fn h_basis(af: &AnalyticFactors, fp: &BiPoly, lo: usize, hi: usize) -> Result<Vec<BiPoly>> {
    let k = fp.field();
    let mut out = Vec::new();
    for fac in &af.factors {
        let ab = fac
            .absolute
            .as_ref()
            .ok_or_else(|| Error::NotApplicable("analytic factors without residue fields".into()))?;
        if fac.n_i != 0 {
            return Err(Error::NotApplicable("branch at infinity".into()));
        }
        let l = &ab.field;
        let fl = if l == k { fp.clone() } else { fp.embed(l) };
        let p = TruncBi::new(&ab.poly, hi);
        let (hat, r) = TruncBi::new(&fl, hi).divrem(&p)?;
        if !r.poly().is_zero() {
            return Err(Error::Internal("residue-field factor does not divide F".into()));
        }
        let g = hat.mul(&p.deriv_y()).into_poly().slice_x(lo, hi);
        if l == k {
            out.push(g);
            continue;
        }
        let f = l.ext_degree();
        let mut comps = vec![Vec::new(); f];
        for (i, j, a) in g.terms() {
            for (t, c) in l.ext_coeffs(&a).into_iter().enumerate() {
                comps[t].push((i, j, c));
            }
        }
        out.extend(comps.iter().map(|ts| BiPoly::from_terms(k, ts)));
    }
    Ok(out)
}

fn kernel_k(k: &FieldCtx, cols: &[Vec<BiPoly>]) -> SubspaceBasis {
    kernel_reb(k, &linear_system(k, cols), cols.len())
}

struct AbsState {
    poly: BiPoly,
    moebius: Option<MoebiusRecord>,
    dx: usize,
    af: AnalyticFactors,
    basis: Vec<BiPoly>,
    trace: AbsTrace,
}

impl AbsState {
    /// Analytic data for a primitive separable `F` with `d_x, d_y ≥ 1` in
    /// large characteristic, at precision `max(d_x, q)` when `raise` is set.
    fn new(fp: &BiPoly, raise: bool) -> Result<Self> {
        let choice = choose_modulus(fp)?;
        if choice.a != UniPoly::var(fp.field()) {
            return Err(Error::FieldTooSmall("no point with F(0, α) ≠ 0".into()));
        }
        let poly = choice.poly;
        let dx = poly.deg_x().max(0) as usize;
        let dy = poly.deg_y().max(0) as usize;
        let mut af = absolute_analytic(&poly, dx)?;
        let mut trace = AbsTrace {
            d_x: dx,
            d_y: dy,
            s: af.s(),
            sbar: af.sbar(),
            moebius: choice.moebius.as_ref().map(|m| m.alpha.clone()),
            ..AbsTrace::default()
        };
        if raise {
            let q = q_bound(&poly, &af)?;
            trace.q = Some(q);
            if q > dx {
                af = absolute_analytic(&poly, q)?;
            }
        }
        let basis = h_basis(&af, &poly, 0, dx + 1)?;
        Ok(AbsState {
            poly,
            moebius: choice.moebius,
            dx,
            af,
            basis,
            trace,
        })
    }

    fn v_space(&self) -> Result<SubspaceBasis> {
        let cols = da_columns(&self.poly, &UniPoly::var(self.poly.field()), self.dx, &self.basis)?;
        Ok(kernel_k(self.poly.field(), &cols))
    }

    fn z_space(&self) -> SubspaceBasis {
        let cols: Vec<Vec<BiPoly>> = self.basis.iter().map(|b| vec![b.clone()]).collect();
        kernel_k(self.poly.field(), &cols)
    }

    fn w_space(&self) -> Result<SubspaceBasis> {
        let k = self.poly.field();
        let prec = self.af.precision;
        if prec <= self.dx {
            return Ok(SubspaceBasis::full(k, self.basis.len()));
        }
        let tails = h_basis(&self.af, &self.poly, self.dx + 1, prec + 1)?;
        let cols: Vec<Vec<BiPoly>> = tails.into_iter().map(|b| vec![b]).collect();
        Ok(kernel_k(k, &cols))
    }

    fn h_nu(&self, nu: &[Elem]) -> BiPoly {
        let k = self.poly.field();
        let mut g = BiPoly::zero(k);
        for (b, c) in self.basis.iter().zip(nu) {
            if !k.is_zero(c) {
                g = g.add(&b.scale(c));
            }
        }
        g
    }
}

/// Number of absolutely irreducible factors of `F`, with multiplicity for
/// the content.
pub fn abs_count(fp: &BiPoly) -> Result<AbsCount> {
    let k = fp.field();
    if fp.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has no factorization".into()));
    }
    let t = fp.content_y().deg().max(0) as usize;
    let prim = fp.primitive_part_y();
    let dy = prim.deg_y().max(0) as usize;
    let dx = prim.deg_x().max(0) as usize;
    let mut trace = AbsTrace {
        d_x: dx,
        d_y: dy,
        ..AbsTrace::default()
    };
    if dy == 0 {
        trace.method = "content".into();
        return Ok(AbsCount { count: t, trace });
    }
    if valx_disc(&prim).is_none() {
        return Err(Error::Inseparable);
    }
    if dy == 1 || dx == 0 {
        trace.method = "trivial".into();
        return Ok(AbsCount {
            count: t + if dx == 0 { dy } else { 1 },
            trace,
        });
    }
    if !large_characteristic(k, dx, dy) {
        return abs_count_by_extension(&prim, t, trace);
    }
    let st = AbsState::new(&prim, false)?;
    let v = st.v_space()?;
    let z = st.z_space();
    let mut trace = st.trace.clone();
    trace.dim_v = Some(v.dim());
    trace.dim_z = Some(z.dim());
    trace.method = "vandermonde".into();
    Ok(AbsCount {
        count: t + v.dim() - z.dim(),
        trace,
    })
}

/// Small characteristic: an irreducible `F_j` of bidegree `(a, b)` has
/// `r̄_j | gcd(a, b)` conjugate absolute factors, and over `GF(|K|^g)` with
/// `g = gcd(a, b)` it splits into exactly `r̄_j` factors.
fn abs_count_by_extension(prim: &BiPoly, t: usize, mut trace: AbsTrace) -> Result<AbsCount> {
    let k = prim.field();
    let sol = solve_recombination(prim)?;
    let mut count = t;
    for g in &sol.factors {
        let a = g.deg_x().max(0) as usize;
        let b = g.deg_y().max(0) as usize;
        let d = num_integer::gcd(a, b);
        if d <= 1 {
            count += 1;
            continue;
        }
        let big = FieldCtx::extension_unchecked(k, first_irreducible(k, d).coeffs().to_vec(), "w");
        count += solve_recombination(&g.embed(&big))?.factors.len();
    }
    trace.method = "extension".into();
    Ok(AbsCount { count, trace })
}

fn extension_for(k: &FieldCtx, q: &UniPoly) -> (FieldCtx, Elem) {
    if q.deg() == 1 {
        (k.clone(), k.neg(&q.coeff(0)))
    } else {
        let l = FieldCtx::extension_unchecked(k, q.coeffs().to_vec(), "z");
        let g = l.gen();
        (l, g)
    }
}

/// Characteristic polynomial over `K` of multiplication by `a ∈ L`.
fn charpoly_over(k: &FieldCtx, l: &FieldCtx, a: &Elem) -> UniPoly {
    let f = l.ext_degree();
    let g = l.gen();
    let mut cols = Vec::with_capacity(f);
    let mut b = a.clone();
    for _ in 0..f {
        let mut c = l.ext_coeffs(&b);
        c.resize(f, k.zero());
        cols.push(c);
        b = l.mul(&b, &g);
    }
    let m: Vec<Vec<Elem>> = (0..f).map(|r| (0..f).map(|c| cols[c][r].clone()).collect()).collect();
    let cp = charpoly_berkowitz(
        &m,
        &k.zero(),
        &k.one(),
        |x, y| k.add(x, y),
        |x, y| k.mul(x, y),
        |x| k.neg(x),
    );
    UniPoly::new(k, cp)
}

/// Rewrites a pair over the field generated by the first coefficient of `P`
/// (terms by increasing power of `y`, then of `x`) that generates `K[z]/(q)`,
/// so that `q` is that coefficient's minimal polynomial.
fn canonical_pair(k: &FieldCtx, pair: AbsPair) -> AbsPair {
    if pair.degree() <= 1 {
        return pair;
    }
    let l = &pair.field;
    let f = l.ext_degree();
    for (_, _, a) in pair.poly.terms() {
        if l.in_base(&a) {
            continue;
        }
        let mp = charpoly_over(k, l, &a);
        if mp.gcd(&mp.derivative()).deg() != 0 {
            continue;
        }
        let mut cols = Vec::with_capacity(f);
        let mut b = l.one();
        for _ in 0..f {
            let mut c = l.ext_coeffs(&b);
            c.resize(f, k.zero());
            cols.push(c);
            b = l.mul(&b, &a);
        }
        let terms = pair.poly.terms();
        let targets: Vec<Vec<Elem>> = terms
            .iter()
            .map(|(_, _, c)| {
                let mut v = l.ext_coeffs(c);
                v.resize(f, k.zero());
                v
            })
            .collect();
        let Some(sol) = solve_columns(k, &cols, &targets) else {
            continue;
        };
        let nl = FieldCtx::extension_unchecked(k, mp.coeffs().to_vec(), "z");
        let nterms: Vec<(usize, usize, Elem)> = terms
            .iter()
            .zip(sol)
            .map(|((i, j, _), v)| (*i, *j, nl.from_ext_coeffs(v)))
            .collect();
        return AbsPair {
            q: mp,
            poly: BiPoly::from_terms(&nl, &nterms),
            field: nl,
        };
    }
    pair
}

fn content_pairs(c: &UniPoly) -> Result<Vec<AbsPair>> {
    let k = c.field();
    let mut out = Vec::new();
    if c.deg() <= 0 {
        return Ok(out);
    }
    for (g, m) in factor_uni(c)?.factors {
        let g = g.monic();
        let (l, z) = extension_for(k, &g);
        let p = BiPoly::from_x_poly(&UniPoly::new(&l, vec![l.neg(&z), l.one()]));
        let pair = if g.deg() == 1 {
            AbsPair::rational(p)
        } else {
            AbsPair { q: g, field: l, poly: p }
        };
        for _ in 0..m {
            out.push(pair.clone());
        }
    }
    Ok(out)
}

fn univariate_pairs(f: &UniPoly) -> Result<Vec<AbsPair>> {
    let k = f.field();
    let mut out = Vec::new();
    for g in factor_uni(f)?.irreducibles() {
        let g = g.monic();
        let (l, z) = extension_for(k, &g);
        let p = BiPoly::from_y_poly(&UniPoly::new(&l, vec![l.neg(&z), l.one()]));
        out.push(if g.deg() == 1 {
            AbsPair::rational(p)
        } else {
            AbsPair { q: g, field: l, poly: p }
        });
    }
    Ok(out)
}

fn finish(fp: &BiPoly, mut pairs: Vec<AbsPair>, trace: AbsTrace) -> Result<AbsFactorization> {
    let k = fp.field();
    pairs.sort_by(|a, b| {
        a.q.deg()
            .cmp(&b.q.deg())
            .then_with(|| a.q.cmp_lex(&b.q))
            .then_with(|| a.norm(k).cmp_canon(&b.norm(k)))
    });
    let mut prod = BiPoly::one(k);
    for p in &pairs {
        prod = prod.mul(&p.norm(k));
    }
    let (i, j, c) = prod
        .terms()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("empty product".into()))?;
    let unit = k.div(&fp.coeff(i, j), &c)?;
    if prod.scale(&unit) != *fp {
        return Err(Error::Internal("absolute factors do not multiply back to the input".into()));
    }
    Ok(AbsFactorization { unit, pairs, trace })
}

/// Largest height tried when searching for a vector separating the residues.
const SEPARATOR_HEIGHT_CAP: u64 = 64;

/// Vectors of `K^r` by increasing height in the enumeration of `K`, zero excluded.
fn separators(k: &FieldCtx, r: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    (1..=SEPARATOR_HEIGHT_CAP).flat_map(move |h| {
        let total = (h + 1).pow(r as u32);
        (0..total).filter_map(move |mut code| {
            let mut idx = Vec::with_capacity(r);
            for _ in 0..r {
                idx.push(code % (h + 1));
                code /= h + 1;
            }
            if !idx.contains(&h) {
                return None;
            }
            idx.iter().map(|&i| k.element_at(i)).collect::<Option<Vec<_>>>()
        })
    })
}

fn squarefree_part(r: &UniPoly) -> UniPoly {
    r.div_exact(&r.gcd(&r.derivative())).unwrap_or_else(|_| r.clone())
}

/// Absolute factorization in characteristic zero or `p > d_x(2d_y − 1)`.
pub fn abs_factor(fp: &BiPoly) -> Result<AbsFactorization> {
    let k = fp.field();
    if fp.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has no factorization".into()));
    }
    let c = fp.content_y();
    let prim = fp.primitive_part_y();
    let dy = prim.deg_y().max(0) as usize;
    let dx = prim.deg_x().max(0) as usize;
    let mut pairs = content_pairs(&c)?;
    let mut trace = AbsTrace {
        d_x: dx,
        d_y: dy,
        ..AbsTrace::default()
    };
    if dy == 0 {
        trace.method = "content".into();
        return finish(fp, pairs, trace);
    }
    if valx_disc(&prim).is_none() {
        return Err(Error::Inseparable);
    }
    if !large_characteristic(k, dx, dy) {
        return Err(Error::SmallCharacteristic(k.characteristic()));
    }
    if let Some(size) = k.size_u64() {
        if (size as usize) < dx * (2 * dy - 1) {
            return Err(Error::FieldTooSmall(format!("need at least {} elements", dx * (2 * dy - 1))));
        }
    }
    if dx == 0 {
        trace.method = "univariate".into();
        pairs.extend(univariate_pairs(&prim.cx(0))?);
        return finish(fp, pairs, trace);
    }
    if dy == 1 {
        trace.method = "trivial".into();
        pairs.push(AbsPair::rational(prim));
        return finish(fp, pairs, trace);
    }
    let st = AbsState::new(&prim, true)?;
    let mut trace = st.trace.clone();
    trace.method = "vandermonde".into();
    let v = st.v_space()?;
    let z = st.z_space();
    let w = st.w_space()?;
    trace.dim_v = Some(v.dim());
    trace.dim_z = Some(z.dim());
    trace.dim_w = Some(w.dim());
    let s = v.intersect(&w)?;
    let rbar = s.dim();
    if rbar == 1 {
        pairs.push(AbsPair::rational(prim));
        return finish(fp, pairs, trace);
    }
    // regular fiber
    let g = &st.poly;
    let disc = discriminant_y(g);
    let lc = g.lc_y();
    let mut idx = 0u64;
    let alpha = loop {
        let a = k
            .element_at(idx)
            .ok_or_else(|| Error::FieldTooSmall("no regular fiber".into()))?;
        if !k.is_zero(&disc.eval(&a)) && !k.is_zero(&lc.eval(&a)) {
            break a;
        }
        idx += 1;
    };
    trace.alpha = Some(alpha.clone());
    let f0 = g.eval_x(&alpha);
    let df0 = f0.derivative();
    let hs: Vec<UniPoly> = s.rows().iter().map(|nu| st.h_nu(nu).eval_x(&alpha)).collect();
    // residue separation
    let fa = BiPoly::from_y_poly(&f0);
    let zdf = BiPoly::from_y_poly(&df0).mul(&BiPoly::x(k));
    let mut found = None;
    for cvec in separators(k, rbar) {
        let mut h = UniPoly::zero(k);
        for (ci, hi) in cvec.iter().zip(&hs) {
            h = h.add(&hi.scale(ci));
        }
        let res = resultant_y(&fa, &zdf.sub(&BiPoly::from_y_poly(&h)));
        let sq = squarefree_part(&res);
        if sq.deg() == rbar as isize {
            found = Some((cvec, h, sq));
            break;
        }
    }
    let (cvec, h, sq) = found.ok_or_else(|| Error::FieldTooSmall("no separating combination of residues".into()))?;
    trace.separator = cvec;
    // partial fractions and lifting
    let shifted = g.shift_x_by(&alpha);
    for qk in factor_uni(&sq)?.irreducibles() {
        let qk = qk.monic();
        let (l, zeta) = extension_for(k, &qk);
        let f_l = f0.embed(&l);
        let fm = f_l.monic();
        let e = fm.gcd(&df0.embed(&l).scale(&zeta).sub(&h.embed(&l))).monic();
        let cof = fm.div_exact(&e)?;
        let g_l = if l == *k { shifted.clone() } else { shifted.embed(&l) };
        let lifted = crate::analytic::hensel_lift(&g_l, &[e, cof], dx + 1)?;
        let lcg = BiPoly::from_x_poly(&g_l.lc_y());
        let minus_alpha = l.neg(&l.embed_from(k, &alpha));
        let mut p = lcg
            .mul_trunc(&lifted[0], dx + 1)
            .primitive_part_y()
            .shift_x_by(&minus_alpha);
        if let Some(rec) = &st.moebius {
            let rec_l = MoebiusRecord {
                alpha: l.embed_from(k, &rec.alpha),
                degree: rec.degree,
            };
            p = rec_l.undo(&p);
        }
        let p = p.normalize();
        pairs.push(if qk.deg() == 1 {
            AbsPair::rational(p)
        } else {
            canonical_pair(k, AbsPair { q: qk, field: l, poly: p })
        });
    }
    finish(fp, pairs, trace)
}
