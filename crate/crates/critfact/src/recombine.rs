//! Recombination of analytic factors into rational factors.
//!
//! For `μ ∈ 𝔽^s` let `G_μ = Σ μ_i [hat𝓕_i ∂_y 𝓕_i]^{d_x+1}`. The residues of
//! `G_μ/F` are constant on the recombination vectors. The operator `D`
//! (derivative of the residues, read through an `a`-adic euclidean division
//! by `F`) and, in small characteristic, the Niederreiter operator give linear
//! equations for the space `V` of such vectors. The relations `Z` among the
//! truncated polynomials and the higher truncation equations `W^n` remove the
//! spurious solutions created by a critical fiber.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::analytic::{analytic_factor, q_bound, AnalyticFactors};
use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx};
use crate::linalg::{hnf_rows, kernel_over_prime_field, kernel_reb, saturated_lattice, Matrix, SubspaceBasis};
use crate::polyring::{
    adic_expand, discriminant_y, moebius, series_divrem, valx_disc, BiPoly, MoebiusRecord, TruncBi, UniPoly,
};
use crate::unifactor::{factor_uni, find_irreducible_coprime, find_nonroot, first_irreducible};

/// Largest number of analytic factors accepted by [`partition_search`].
pub const PARTITION_SEARCH_CAP: usize = 12;

/// Whether the linear systems are solved over the prime field `F_p`
/// rather than over `K`.
pub fn uses_prime_field(k: &FieldCtx, dx: usize, dy: usize) -> bool {
    let p = k.characteristic();
    p > 0 && p <= 2 * (dx as u64) * (dy.saturating_sub(1) as u64)
}

/// Where the pipeline stopped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Exit {
    /// No factor of positive degree in `y`.
    #[default]
    Content,
    /// `F` does not depend on `x`.
    Univariate,
    /// `deg_y F = 1`.
    Linear,
    /// One analytic factor.
    SingleAnalyticFactor,
    /// `dim ker D_a = 1`.
    DaKernel,
    /// `dim V(F_p) = 1`.
    NaKernel,
    /// `V(F_p)` already a partition and `Z = 0`.
    PartitionShortcut,
    /// `q ≤ d_x`.
    QBound,
    /// Intersection with `W^{q+1}`.
    Raised,
    /// Factorization along a regular fiber `x = c` of an extension field.
    RegularFiber,
}

/// Intermediate data of a run.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub d_x: usize,
    pub d_y: usize,
    /// Number of analytic factors.
    pub s: usize,
    pub degrees: Vec<usize>,
    /// Center of the Moebius change of variables, if any.
    pub moebius: Option<Elem>,
    /// The modulus `a`.
    pub modulus: Option<UniPoly>,
    /// Linear algebra over `F_p` instead of `K`.
    pub prime_field: bool,
    pub dim_da: Option<usize>,
    pub da_basis: Vec<Vec<Elem>>,
    pub dim_na: Option<usize>,
    pub dim_z: Option<usize>,
    pub z_basis: Vec<Vec<Elem>>,
    pub q: Option<usize>,
    pub dim_wq: Option<usize>,
    /// Truncation orders `n` of the analytic factorizations computed.
    pub precisions: Vec<usize>,
    pub exit: Exit,
    pub fallback: Option<String>,
}

/// Switches of the factorization pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecombOptions {
    /// Stop as soon as irreducibility or the solution is known.
    pub early_exit: bool,
    /// Lower bound for the truncation order used in the higher truncation equations.
    pub min_precision: Option<usize>,
}

impl Default for RecombOptions {
    fn default() -> Self {
        RecombOptions {
            early_exit: true,
            min_precision: None,
        }
    }
}

impl RecombOptions {
    fn target(&self, q: usize) -> usize {
        q.max(self.min_precision.unwrap_or(0))
    }
}

/// Irreducible factorization `F = unit·Π content·Π factors`.
#[derive(Clone, Debug)]
pub struct RecombSolution {
    pub unit: Elem,
    /// Irreducible factors of the content in `K[x]`, monic, with repetition.
    pub content: Vec<UniPoly>,
    /// Irreducible factors of positive degree in `y`.
    pub factors: Vec<BiPoly>,
    /// Supports of the recombination vectors over the analytic factors.
    pub parts: Vec<Vec<usize>>,
    pub trace: Trace,
}

impl RecombSolution {
    /// `unit·Π content·Π factors`.
    pub fn expand(&self, f: &FieldCtx) -> BiPoly {
        let mut p = BiPoly::constant(f, self.unit.clone());
        for c in &self.content {
            p = p.mul(&BiPoly::from_x_poly(c));
        }
        for g in &self.factors {
            p = p.mul(g);
        }
        p
    }
}

/// Result of [`count_factors`].
#[derive(Clone, Debug)]
pub struct FactorCount {
    /// `t + dim V − dim Z`.
    pub count: usize,
    /// Whether `count` is the number of irreducible factors (otherwise an upper bound).
    pub exact: bool,
    /// Exact count from `V ∩ W^{q+1}` and `Z ∩ W^{q+1}` when `count` is only a bound.
    pub refined: Option<usize>,
    pub trace: Trace,
}

// ---------------------------------------------------------------------------
// building blocks

/// `[hat𝓕_i ∂_y 𝓕_i]^{hi}_{lo}` for every analytic factor, where
/// `hat𝓕_i = u·Π_{j≠i} 𝓕_j`; requires precision `≥ hi − 1`.
pub fn basis_polys(af: &AnalyticFactors, lo: usize, hi: usize) -> Vec<BiPoly> {
    let f = af.unit.field();
    let s = af.factors.len();
    let polys: Vec<BiPoly> = af.factors.iter().map(|g| g.poly.truncate_x(hi)).collect();
    let mut prefix = vec![BiPoly::from_x_poly(&af.unit.truncate(hi))];
    for g in &polys {
        let next = prefix.last().unwrap().mul_trunc(g, hi);
        prefix.push(next);
    }
    let mut suffix = vec![BiPoly::one(f); s + 1];
    for i in (0..s).rev() {
        suffix[i] = suffix[i + 1].mul_trunc(&polys[i], hi);
    }
    (0..s)
        .map(|i| {
            prefix[i]
                .mul_trunc(&suffix[i + 1], hi)
                .mul_trunc(&polys[i].deriv_y(), hi)
                .slice_x(lo, hi)
        })
        .collect()
}

struct DOperator {
    fx: BiPoly,
    fy: BiPoly,
    t: BiPoly,
}

impl DOperator {
    fn new(fp: &BiPoly) -> Self {
        let fx = fp.deriv_x();
        let fy = fp.deriv_y();
        let t = fy.deriv_x().mul(&fy).sub(&fy.deriv_y().mul(&fx));
        DOperator { fx, fy, t }
    }

    fn apply(&self, g: &BiPoly) -> BiPoly {
        g.deriv_x()
            .mul(&self.fy)
            .sub(&g.deriv_y().mul(&self.fx))
            .mul(&self.fy)
            .sub(&self.t.mul(g))
    }
}

/// `D(G) = (G_x F_y − G_y F_x) F_y − (F_xy F_y − F_yy F_x) G`.
pub fn d_operator(g: &BiPoly, fp: &BiPoly) -> BiPoly {
    DOperator::new(fp).apply(g)
}

/// `G^p + ∂_y^{p−1}(G·F^{p−1})`, given `fpow = F^{p−1}`; vanishes exactly
/// when `G/F = Σ c_i ∂_y F_i/F_i` with every `c_i ∈ F_p`.
pub fn niederreiter(g: &BiPoly, fpow: &BiPoly) -> BiPoly {
    let k = g.field();
    let p = k.characteristic() as usize;
    let mut terms: Vec<(usize, usize, Elem)> = g
        .terms()
        .into_iter()
        .map(|(i, j, c)| (p * i, p * j, k.pow(&c, p as u64)))
        .collect();
    // ∂_y^{p−1} y^e = −y^{e−p+1} when e ≡ −1 mod p and 0 otherwise
    let h = g.mul(fpow);
    for (e, c) in h.y_coeffs().iter().enumerate() {
        if e % p == p - 1 {
            for (i, a) in c.coeffs().iter().enumerate() {
                if !k.is_zero(a) {
                    terms.push((i, e + 1 - p, k.neg(a)));
                }
            }
        }
    }
    BiPoly::from_terms(k, &terms)
}

/// [`niederreiter`] on a single fiber: `g^p + ∂_y^{p−1}(g·f^{p−1})` for
/// univariate `g` and `fpow = f^{p−1}`.
fn niederreiter_uni(g: &UniPoly, fpow: &UniPoly) -> UniPoly {
    let k = g.field();
    let p = k.characteristic() as usize;
    let h = g.mul(fpow);
    let mut c = vec![k.zero(); (p * g.len()).max(h.len())];
    for (j, a) in g.coeffs().iter().enumerate() {
        c[p * j] = k.pow(a, p as u64);
    }
    for (e, a) in h.coeffs().iter().enumerate() {
        if e % p == p - 1 {
            c[e + 1 - p] = k.sub(&c[e + 1 - p], a);
        }
    }
    UniPoly::new(k, c)
}

/// `K` itself when it has at least `n` elements, else an extension that does.
fn fiber_field(k: &FieldCtx, n: u64) -> FieldCtx {
    let q = k.size_u64().unwrap_or(u64::MAX);
    if q >= n {
        return k.clone();
    }
    let mut m = 1;
    let mut size = q;
    while size < n {
        m += 1;
        size = size.saturating_mul(q);
    }
    FieldCtx::extension_unchecked(k, first_irreducible(k, m).coeffs().to_vec(), "w")
}

/// Change of variables and modulus `a` for the division by `F`.
#[derive(Clone, Debug)]
pub struct ModulusChoice {
    pub poly: BiPoly,
    pub moebius: Option<MoebiusRecord>,
    pub a: UniPoly,
}

/// `a = x` when `lc_y F(0) ≠ 0`; otherwise a Moebius change of variables at
/// the first `α` with `F(0, α) ≠ 0` and `a = x`; otherwise an irreducible `a`
/// coprime to `lc_y F`.
pub fn choose_modulus(fp: &BiPoly) -> Result<ModulusChoice> {
    let k = fp.field();
    let x = UniPoly::var(k);
    let lc = fp.lc_y();
    if !k.is_zero(&lc.coeff(0)) {
        return Ok(ModulusChoice {
            poly: fp.clone(),
            moebius: None,
            a: x,
        });
    }
    if let Some(alpha) = find_nonroot(fp) {
        let (g, rec) = moebius(fp, &alpha)?;
        return Ok(ModulusChoice {
            poly: g,
            moebius: Some(rec),
            a: x,
        });
    }
    Ok(ModulusChoice {
        poly: fp.clone(),
        moebius: None,
        a: find_irreducible_coprime(&lc)?,
    })
}

/// For each `G` in `basis`, the polynomials `{Q}^n_m` and `{R}^n` of the
/// `a`-adic division `D(G) = QF + R` whose vanishing means `F | D(G)`.
pub(crate) fn da_columns(fp: &BiPoly, a: &UniPoly, dx: usize, basis: &[BiPoly]) -> Result<Vec<Vec<BiPoly>>> {
    let da = a.deg() as usize;
    let m = (2 * dx - 1) / da + 1;
    let n = (3 * dx - 1).div_ceil(da) + 1;
    let dop = DOperator::new(fp);
    let mut cols = Vec::with_capacity(basis.len());
    for b in basis {
        let d = dop.apply(b);
        let (q, r) = series_divrem(&d, fp, a, n)?;
        cols.push(vec![adic_expand(&q, a).truncate_shifted(m, n), r]);
    }
    Ok(cols)
}

/// One row per monomial of each component, one column per unknown.
pub(crate) fn linear_system(k: &FieldCtx, cols: &[Vec<BiPoly>]) -> Matrix {
    let s = cols.len();
    let mut rows: BTreeMap<(usize, usize, usize), Vec<Elem>> = BTreeMap::new();
    for (c, comps) in cols.iter().enumerate() {
        for (t, p) in comps.iter().enumerate() {
            for (i, j, a) in p.terms() {
                rows.entry((t, i, j)).or_insert_with(|| vec![k.zero(); s])[c] = a;
            }
        }
    }
    rows.into_values().collect()
}

/// Data shared by the steps of the pipeline for a primitive separable `F`
/// with `d_x, d_y ≥ 1`.
#[derive(Clone, Debug)]
pub struct RecombState {
    /// `F` after the change of variables.
    pub poly: BiPoly,
    pub moebius: Option<MoebiusRecord>,
    pub a: UniPoly,
    pub dx: usize,
    pub dy: usize,
    /// Analytic factors modulo `x^{d_x+1}`.
    pub af: AnalyticFactors,
    /// `[hat𝓕_i ∂_y 𝓕_i]^{d_x+1}`.
    pub basis: Vec<BiPoly>,
    pub prime_field: bool,
}

impl RecombState {
    pub fn new(fp: &BiPoly) -> Result<Self> {
        let choice = choose_modulus(fp)?;
        let poly = choice.poly;
        let dx = poly.deg_x().max(0) as usize;
        let dy = poly.deg_y().max(0) as usize;
        let af = analytic_factor(&poly, dx)?;
        let basis = basis_polys(&af, 0, dx + 1);
        let prime_field = uses_prime_field(poly.field(), dx, dy);
        Ok(RecombState {
            poly,
            moebius: choice.moebius,
            a: choice.a,
            dx,
            dy,
            af,
            basis,
            prime_field,
        })
    }

    pub fn s(&self) -> usize {
        self.af.factors.len()
    }

    pub fn field(&self) -> &FieldCtx {
        self.poly.field()
    }

    /// The coefficient field `𝔽` of the recombination vectors.
    pub fn coef_field(&self) -> FieldCtx {
        if self.prime_field {
            self.field().prime_field()
        } else {
            self.field().clone()
        }
    }

    fn kernel(&self, cols: &[Vec<BiPoly>]) -> Result<SubspaceBasis> {
        let k = self.field();
        let m = linear_system(k, cols);
        if self.prime_field {
            kernel_over_prime_field(k, &m, cols.len())
        } else {
            Ok(kernel_reb(k, &m, cols.len()))
        }
    }

    /// `G_μ` for `μ` with coordinates in `𝔽`.
    pub fn g_mu(&self, mu: &[Elem]) -> BiPoly {
        let k = self.field();
        let ff = self.coef_field();
        let mut g = BiPoly::zero(k);
        for (b, m) in self.basis.iter().zip(mu) {
            if !ff.is_zero(m) {
                g = g.add(&b.scale(&k.embed_from(&ff, m)));
            }
        }
        g
    }

    /// `ker D_a`.
    pub fn da_kernel(&self) -> Result<SubspaceBasis> {
        let cols = da_columns(&self.poly, &self.a, self.dx, &self.basis)?;
        self.kernel(&cols)
    }

    /// `V(F_p) = {μ ∈ inside : N(G_μ) = 0}` for `inside ⊆ ker D_a` over `F_p`.
    pub fn na_kernel(&self, inside: &SubspaceBasis) -> Result<SubspaceBasis> {
        if !self.prime_field {
            return Err(Error::NotApplicable(
                "the Niederreiter operator is used in small characteristic only".into(),
            ));
        }
        let k = self.field();
        let fp = k.prime_field();
        let p = k.characteristic();
        // N(G_μ) = M(x^p, y^p) with deg_x M ≤ max(d_x, deg_x F), and c ↦ c^p is
        // injective, so N(G_μ) vanishes iff it vanishes on that many fibers x = c.
        let npts = self.dx.max(self.poly.deg_x().max(0) as usize) + 1;
        let l = fiber_field(k, npts as u64);
        let pts: Vec<Elem> = (0..npts as u64).map(|t| l.element_at(t).expect("enough elements")).collect();
        let fl = self.poly.embed(&l);
        let fibers: Vec<UniPoly> = pts.iter().map(|c| fl.eval_x(c).pow(p - 1)).collect();
        let rows = inside.rows();
        let cols: Vec<Vec<BiPoly>> = rows
            .iter()
            .map(|mu| {
                let gl = self.g_mu(mu).embed(&l);
                pts.iter()
                    .zip(&fibers)
                    .map(|(c, fpow)| BiPoly::from_y_poly(&niederreiter_uni(&gl.eval_x(c), fpow)))
                    .collect()
            })
            .collect();
        let m = linear_system(&l, &cols);
        let ker = kernel_over_prime_field(&l, &m, rows.len())?;
        let out = ker
            .rows()
            .iter()
            .map(|c| {
                (0..self.s())
                    .map(|i| {
                        let mut acc = fp.zero();
                        for (ck, b) in c.iter().zip(rows) {
                            acc = fp.add(&acc, &fp.mul(ck, &b[i]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(SubspaceBasis::from_rows(&fp, self.s(), out))
    }

    /// `Z = {μ : G_μ = 0}`.
    pub fn z_space(&self) -> Result<SubspaceBasis> {
        let cols: Vec<Vec<BiPoly>> = self.basis.iter().map(|b| vec![b.clone()]).collect();
        self.kernel(&cols)
    }

    /// `W^n = {μ : Σ μ_i [hat𝓕_i ∂_y 𝓕_i]^n_{d_x+1} = 0}`, the full space when `n ≤ d_x + 1`.
    pub fn wn_space(&self, n: usize) -> Result<SubspaceBasis> {
        let s = self.s();
        if n <= self.dx + 1 {
            return Ok(SubspaceBasis::full(&self.coef_field(), s));
        }
        let hi = analytic_factor(&self.poly, n - 1)?;
        let perm = match_factors(&self.af, &hi, self.dx + 1)?;
        let tails = basis_polys(&hi, self.dx + 1, n);
        let cols: Vec<Vec<BiPoly>> = perm.iter().map(|&j| vec![tails[j].clone()]).collect();
        self.kernel(&cols)
    }

    /// `prim [lc(F)·Π_{i ∈ part} 𝓕_i]^{d_x+1}` for each part, in the original variables.
    pub fn reconstruct(&self, parts: &[Vec<usize>]) -> Vec<BiPoly> {
        let n = self.dx + 1;
        let lc = BiPoly::from_x_poly(&self.poly.lc_y());
        parts
            .iter()
            .map(|part| {
                let mut p = lc.clone();
                for &i in part {
                    p = p.mul_trunc(&self.af.factors[i].poly, n);
                }
                self.undo(&p.primitive_part_y())
            })
            .collect()
    }

    fn undo(&self, g: &BiPoly) -> BiPoly {
        match &self.moebius {
            Some(rec) => rec.undo(g),
            None => g.clone(),
        }
    }

    fn base_trace(&self) -> Trace {
        Trace {
            d_x: self.dx,
            d_y: self.dy,
            s: self.s(),
            degrees: self.af.degrees(),
            moebius: self.moebius.as_ref().map(|m| m.alpha.clone()),
            modulus: Some(self.a.clone()),
            prime_field: self.prime_field,
            precisions: vec![self.dx],
            ..Trace::default()
        }
    }
}

/// Index in `hi` of each factor of `lo`, matching truncations modulo `x^n`.
fn match_factors(lo: &AnalyticFactors, hi: &AnalyticFactors, n: usize) -> Result<Vec<usize>> {
    let mut used = vec![false; hi.factors.len()];
    let mut out = Vec::with_capacity(lo.factors.len());
    for f in &lo.factors {
        let t = f.poly.truncate_x(n);
        let j = (0..hi.factors.len())
            .find(|&j| !used[j] && hi.factors[j].d == f.d && hi.factors[j].poly.truncate_x(n) == t)
            .ok_or_else(|| Error::Internal("analytic factors do not match across precisions".into()))?;
        used[j] = true;
        out.push(j);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// normalization of outputs

/// Scales `g` to a canonical representative: over `Q` integer coefficients
/// without common factor, otherwise [`BiPoly::normalize`]; in both cases the
/// lowest coefficient of `lc_y` is positive or one.
pub fn canonical(g: &BiPoly) -> BiPoly {
    let g = g.normalize();
    let k = g.field();
    if !k.is_rationals() {
        return g;
    }
    let qs: Vec<BigRational> = g.terms().iter().map(|(_, _, c)| k.to_rational(c).unwrap()).collect();
    let mut l = BigInt::one();
    let mut d = BigInt::zero();
    for q in &qs {
        l = num_integer::Integer::lcm(&l, q.denom());
    }
    for q in &qs {
        let v = (q * BigRational::from_integer(l.clone())).to_integer();
        d = num_integer::Integer::gcd(&d, &v);
    }
    if d.is_zero() {
        return g;
    }
    let scale = BigRational::new(l, d.abs());
    g.scale(&k.from_rational(&scale).unwrap())
}

fn content_factors(c: &UniPoly) -> Result<Vec<UniPoly>> {
    if c.deg() <= 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (g, m) in factor_uni(c)?.factors {
        for _ in 0..m {
            out.push(g.monic());
        }
    }
    Ok(out)
}

fn finish(
    input: &BiPoly,
    content: Vec<UniPoly>,
    mut factors: Vec<BiPoly>,
    parts: Vec<Vec<usize>>,
    trace: Trace,
) -> Result<RecombSolution> {
    let k = input.field();
    factors = factors.iter().map(canonical).collect();
    factors.sort_by(|a, b| a.cmp_canon(b));
    let mut prod = BiPoly::one(k);
    for c in &content {
        prod = prod.mul(&BiPoly::from_x_poly(c));
    }
    for g in &factors {
        prod = prod.mul(g);
    }
    let (i, j, c) = prod
        .terms()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("empty product".into()))?;
    let unit = k.div(&input.coeff(i, j), &c)?;
    if prod.scale(&unit) != *input {
        return Err(Error::Internal("factors do not multiply back to the input".into()));
    }
    Ok(RecombSolution {
        unit,
        content,
        factors,
        parts,
        trace,
    })
}

// ---------------------------------------------------------------------------
// the pipeline

/// Irreducible factorization of `F` over `K`.
pub fn solve_recombination(fp: &BiPoly) -> Result<RecombSolution> {
    solve_recombination_with(fp, RecombOptions::default())
}

/// Irreducible factorization of `F` over `K` with explicit pipeline switches.
pub fn solve_recombination_with(fp: &BiPoly, opts: RecombOptions) -> Result<RecombSolution> {
    if fp.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has no factorization".into()));
    }
    let c = fp.content_y();
    let content = content_factors(&c)?;
    let prim = fp.primitive_part_y();
    let dy = prim.deg_y().max(0) as usize;
    let dx = prim.deg_x().max(0) as usize;
    let mut trace = Trace {
        d_x: dx,
        d_y: dy,
        ..Trace::default()
    };
    if dy == 0 {
        return finish(fp, content, Vec::new(), Vec::new(), trace);
    }
    if valx_disc(&prim).is_none() {
        return Err(Error::Inseparable);
    }
    if dy == 1 {
        trace.exit = Exit::Linear;
        return finish(fp, content, vec![prim], vec![vec![0]], trace);
    }
    if dx == 0 {
        trace.exit = Exit::Univariate;
        let fy = prim.cx(0);
        let fs: Vec<BiPoly> = factor_uni(&fy)?
            .irreducibles()
            .iter()
            .map(BiPoly::from_y_poly)
            .collect();
        let parts = (0..fs.len()).map(|i| vec![i]).collect();
        return finish(fp, content, fs, parts, trace);
    }
    let st = match RecombState::new(&prim) {
        Ok(st) => st,
        Err(e @ (Error::SmallCharacteristicUnsupported(_) | Error::TowerTooDeep(_))) => {
            let fs = factor_via_regular_fiber(&prim)?;
            trace.exit = Exit::RegularFiber;
            trace.fallback = Some(e.to_string());
            let parts = (0..fs.len()).map(|i| vec![i]).collect();
            return finish(fp, content, fs, parts, trace);
        }
        Err(e) => return Err(e),
    };
    let (factors, parts, trace) = run_pipeline(&st, opts)?;
    finish(fp, content, factors, parts, trace)
}

fn run_pipeline(st: &RecombState, opts: RecombOptions) -> Result<(Vec<BiPoly>, Vec<Vec<usize>>, Trace)> {
    let s = st.s();
    let mut trace = st.base_trace();
    let all: Vec<usize> = (0..s).collect();
    let irreducible = |mut t: Trace, exit: Exit| -> Result<(Vec<BiPoly>, Vec<Vec<usize>>, Trace)> {
        t.exit = exit;
        Ok((st.reconstruct(&[all.clone()]), vec![all.clone()], t))
    };
    // Step 1
    if s == 1 && opts.early_exit {
        return irreducible(trace, Exit::SingleAnalyticFactor);
    }
    // Step 3
    let mut s0 = st.da_kernel()?;
    trace.dim_da = Some(s0.dim());
    trace.da_basis = s0.rows().clone();
    let z = st.z_space()?;
    trace.dim_z = Some(z.dim());
    trace.z_basis = z.rows().clone();
    if s0.dim() == 1 && opts.early_exit {
        return irreducible(trace, Exit::DaKernel);
    }
    // Step 4
    if st.prime_field {
        s0 = st.na_kernel(&s0)?;
        trace.dim_na = Some(s0.dim());
        if s0.dim() == 1 && opts.early_exit {
            return irreducible(trace, Exit::NaKernel);
        }
        if opts.early_exit && z.dim() == 0 {
            if let Some(parts) = s0.partition() {
                trace.exit = Exit::PartitionShortcut;
                return Ok((st.reconstruct(&parts), parts, trace));
            }
        }
    }
    // Step 5
    let q = q_bound(&st.poly, &st.af)?;
    trace.q = Some(q);
    let target = opts.target(q);
    if target > st.dx {
        // Step 6
        let w = st.wn_space(target + 1)?;
        trace.precisions.push(target);
        trace.dim_wq = Some(w.dim());
        s0 = s0.intersect(&w)?;
        trace.exit = Exit::Raised;
    } else {
        trace.exit = Exit::QBound;
    }
    // Step 7
    let parts = s0
        .partition()
        .ok_or_else(|| Error::Internal("recombination space is not spanned by a partition".into()))?;
    Ok((st.reconstruct(&parts), parts, trace))
}

/// Factorization through a fiber `x = c` where `F(c, y)` is separable of
/// degree `d_y`, with `c` in an extension `K'` of `K` when `K` is too small;
/// factors over `K'` are grouped into Frobenius orbits.
pub fn factor_via_regular_fiber(fp: &BiPoly) -> Result<Vec<BiPoly>> {
    let k = fp.field();
    let dx = fp.deg_x().max(0) as usize;
    let dy = fp.deg_y().max(0) as usize;
    let bound = (dx * (2 * dy).saturating_sub(1) + dx + 1) as u64;
    let mut m = 1usize;
    if let Some(q) = k.size_u64().or(if k.is_finite() { Some(u64::MAX) } else { None }) {
        let mut size = q as u128;
        while size <= bound as u128 {
            size *= q as u128;
            m += 1;
        }
    }
    let big = if m == 1 {
        k.clone()
    } else {
        FieldCtx::extension_unchecked(k, first_irreducible(k, m).coeffs().to_vec(), "w")
    };
    let disc = discriminant_y(fp).embed(&big);
    let lc = fp.lc_y().embed(&big);
    let f_big = fp.embed(&big);
    let mut idx = 0u64;
    let c = loop {
        let c = big
            .element_at(idx)
            .ok_or_else(|| Error::FieldTooSmall("no regular fiber found".into()))?;
        if !big.is_zero(&disc.eval(&c)) && !big.is_zero(&lc.eval(&c)) {
            break c;
        }
        idx += 1;
    };
    let shifted = f_big.shift_x_by(&c);
    let st = RecombState::new(&shifted)?;
    let (fs, _, _) = run_pipeline(&st, RecombOptions::default())?;
    let minus_c = big.neg(&c);
    let back: Vec<BiPoly> = fs.iter().map(|g| g.shift_x_by(&minus_c).primitive_part_y().normalize()).collect();
    if m == 1 {
        return Ok(back);
    }
    let q = k
        .size_u64()
        .ok_or_else(|| Error::FieldTooSmall("Frobenius orbits need a field of size below 2^64".into()))?;
    let frob = |g: &BiPoly| g.map(&big, |a| big.pow(a, q)).normalize();
    let mut used = vec![false; back.len()];
    let mut out = Vec::new();
    for i in 0..back.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut prod = back[i].clone();
        let mut cur = frob(&back[i]);
        while cur != back[i] {
            let j = (0..back.len())
                .find(|&j| !used[j] && back[j] == cur)
                .ok_or_else(|| Error::Internal("Frobenius orbit leaves the factor set".into()))?;
            used[j] = true;
            prod = prod.mul(&back[j]);
            cur = frob(&cur);
        }
        let prod = prod.normalize();
        if prod.terms().iter().any(|(_, _, a)| !big.in_base(a)) {
            return Err(Error::Internal("orbit product is not defined over the base field".into()));
        }
        out.push(prod.map(k, |a| big.base_part(a)));
    }
    Ok(out)
}

/// Number of irreducible factors, `t + dim V − dim Z`.
pub fn count_factors(fp: &BiPoly) -> Result<FactorCount> {
    count_factors_with(fp, RecombOptions::default())
}

/// [`count_factors`] with an optional lower bound for the refinement precision.
pub fn count_factors_with(fp: &BiPoly, opts: RecombOptions) -> Result<FactorCount> {
    let c = fp.content_y();
    let t = content_factors(&c)?.len();
    let prim = fp.primitive_part_y();
    let dy = prim.deg_y().max(0) as usize;
    let dx = prim.deg_x().max(0) as usize;
    let exact = |count: usize, trace: Trace| FactorCount {
        count,
        exact: true,
        refined: None,
        trace,
    };
    let mut trace = Trace {
        d_x: dx,
        d_y: dy,
        ..Trace::default()
    };
    if dy == 0 {
        return Ok(exact(t, trace));
    }
    if valx_disc(&prim).is_none() {
        return Err(Error::Inseparable);
    }
    if dy == 1 {
        trace.exit = Exit::Linear;
        return Ok(exact(t + 1, trace));
    }
    if dx == 0 {
        trace.exit = Exit::Univariate;
        return Ok(exact(t + factor_uni(&prim.cx(0))?.factors.len(), trace));
    }
    let st = match RecombState::new(&prim) {
        Ok(st) => st,
        Err(e @ (Error::SmallCharacteristicUnsupported(_) | Error::TowerTooDeep(_))) => {
            trace.exit = Exit::RegularFiber;
            trace.fallback = Some(e.to_string());
            return Ok(exact(t + factor_via_regular_fiber(&prim)?.len(), trace));
        }
        Err(e) => return Err(e),
    };
    let mut trace = st.base_trace();
    if st.s() == 1 {
        trace.exit = Exit::SingleAnalyticFactor;
        return Ok(exact(t + 1, trace));
    }
    let mut v = st.da_kernel()?;
    trace.dim_da = Some(v.dim());
    trace.da_basis = v.rows().clone();
    if st.prime_field {
        v = st.na_kernel(&v)?;
        trace.dim_na = Some(v.dim());
    }
    let z = st.z_space()?;
    trace.dim_z = Some(z.dim());
    trace.z_basis = z.rows().clone();
    let count = t + v.dim() - z.dim();
    let q = q_bound(&st.poly, &st.af)?;
    trace.q = Some(q);
    if st.prime_field || q <= st.dx {
        trace.exit = Exit::QBound;
        return Ok(exact(count, trace));
    }
    let target = opts.target(q);
    let w = st.wn_space(target + 1)?;
    trace.precisions.push(target);
    trace.dim_wq = Some(w.dim());
    trace.exit = Exit::Raised;
    let refined = t + v.intersect(&w)?.dim() - z.intersect(&w)?.dim();
    Ok(FactorCount {
        count,
        exact: false,
        refined: Some(refined),
        trace,
    })
}

/// Whether `F` is irreducible over `K`.
pub fn irreducible_test(fp: &BiPoly) -> Result<bool> {
    Ok(irreducible_test_traced(fp)?.0)
}

/// [`irreducible_test`] together with the intermediate dimensions.
pub fn irreducible_test_traced(fp: &BiPoly) -> Result<(bool, Trace)> {
    if fp.is_zero() {
        return Ok((false, Trace::default()));
    }
    let dy = fp.deg_y().max(0) as usize;
    let mut trace = Trace {
        d_x: fp.deg_x().max(0) as usize,
        d_y: dy,
        ..Trace::default()
    };
    if dy == 0 {
        let c = fp.cy(0);
        let irr = c.deg() >= 1 && content_factors(&c)?.len() == 1;
        return Ok((irr, trace));
    }
    if fp.content_y().deg() > 0 {
        return Ok((false, trace));
    }
    if valx_disc(fp).is_none() {
        return Err(Error::Inseparable);
    }
    if dy == 1 {
        trace.exit = Exit::Linear;
        return Ok((true, trace));
    }
    if trace.d_x == 0 {
        trace.exit = Exit::Univariate;
        return Ok((factor_uni(&fp.cx(0))?.factors.len() == 1, trace));
    }
    let st = match RecombState::new(fp) {
        Ok(st) => st,
        Err(e @ (Error::SmallCharacteristicUnsupported(_) | Error::TowerTooDeep(_))) => {
            trace.exit = Exit::RegularFiber;
            trace.fallback = Some(e.to_string());
            return Ok((factor_via_regular_fiber(fp)?.len() == 1, trace));
        }
        Err(e) => return Err(e),
    };
    let mut trace = st.base_trace();
    if st.s() == 1 {
        trace.exit = Exit::SingleAnalyticFactor;
        return Ok((true, trace));
    }
    let mut v = st.da_kernel()?;
    trace.dim_da = Some(v.dim());
    let z = st.z_space()?;
    trace.dim_z = Some(z.dim());
    if st.prime_field {
        v = st.na_kernel(&v)?;
        trace.dim_na = Some(v.dim());
        trace.exit = Exit::NaKernel;
        return Ok((v.dim() - z.dim() == 1, trace));
    }
    let w = st.wn_space(2 * st.dx)?;
    if 2 * st.dx > st.dx + 1 {
        trace.precisions.push(2 * st.dx - 1);
    }
    trace.dim_wq = Some(w.dim());
    trace.exit = Exit::Raised;
    Ok((v.intersect(&w)?.dim() - z.intersect(&w)?.dim() == 1, trace))
}

// ---------------------------------------------------------------------------
// reasonably ramified fibers

/// Outcome of the Hermite normal form recombination.
#[derive(Clone, Debug)]
pub struct RamifiedSolution {
    /// Integer exponent vectors over the analytic factors.
    pub vectors: Vec<Vec<BigInt>>,
    /// Primitive factors in the original variables.
    pub factors: Vec<BiPoly>,
}

/// Coordinates that vanish on `Z`.
pub fn free_coordinates(z: &SubspaceBasis) -> Vec<usize> {
    z.null_coordinates()
}

/// Whether `dim π(V) = dim V − dim Z` for the projection `π` onto the
/// coordinates vanishing on `Z`.
pub fn is_reasonably_ramified(v: &SubspaceBasis, z: &SubspaceBasis) -> bool {
    let idx = free_coordinates(z);
    v.project(&idx).dim() + z.dim() == v.dim()
}

/// Factors from the first `r` rows of the Hermite normal form of a basis of
/// `V ∩ Z^s`, columns ordered with the coordinates free in `Z` first.
/// Characteristic zero only; `NotApplicable` when `F` is not reasonably
/// ramified or a negative exponent falls on a factor whose leading coefficient
/// vanishes at `x = 0`.
pub fn reasonably_ramified_path(st: &RecombState, v: &SubspaceBasis, z: &SubspaceBasis) -> Result<RamifiedSolution> {
    let k = st.field();
    if !k.is_rationals() {
        return Err(Error::NotApplicable("integer recombination needs characteristic 0".into()));
    }
    if !is_reasonably_ramified(v, z) {
        return Err(Error::NotApplicable("F is not reasonably ramified over x = 0".into()));
    }
    let s = st.s();
    let free = free_coordinates(z);
    let mut order = free.clone();
    order.extend((0..s).filter(|i| !free.contains(i)));
    let rows: Vec<Vec<BigRational>> = v
        .rows()
        .iter()
        .map(|r| order.iter().map(|&i| k.to_rational(&r[i]).unwrap()).collect())
        .collect();
    let lattice = saturated_lattice(&rows, s);
    let h = hnf_rows(&lattice);
    let r = v.dim() - z.dim();
    let mut vectors = Vec::with_capacity(r);
    for row in h.iter().take(r) {
        let mut w = vec![BigInt::zero(); s];
        for (pos, &i) in order.iter().enumerate() {
            w[i] = row[pos].clone();
        }
        vectors.push(w);
    }
    let n = st.dx + 1;
    let mut factors = Vec::with_capacity(r);
    for w in &vectors {
        let mut num = TruncBi::new(&BiPoly::from_x_poly(&st.poly.lc_y()), n);
        let mut den = TruncBi::new(&BiPoly::one(k), n);
        for (i, e) in w.iter().enumerate() {
            let Some(e) = e.to_i64() else {
                return Err(Error::NotApplicable("exponent out of range".into()));
            };
            if e == 0 {
                continue;
            }
            let f = st.af.truncated(i).truncate(n);
            if e > 0 {
                for _ in 0..e {
                    num = num.mul(&f);
                }
            } else {
                if st.af.factors[i].n_i != 0 {
                    return Err(Error::NotApplicable(
                        "negative exponent on a factor with non-unit leading coefficient".into(),
                    ));
                }
                for _ in 0..(-e) {
                    den = den.mul(&f);
                }
            }
        }
        let quo = num
            .div_exact(&den)
            .map_err(|_| Error::NotApplicable("inexact division of truncated factors".into()))?;
        factors.push(st.undo(&quo.into_poly().primitive_part_y()));
    }
    let mut prod = BiPoly::one(k);
    for g in &factors {
        prod = prod.mul(g);
    }
    let target = st.undo(&st.poly);
    if prod.deg_y() != target.deg_y() || canonical(&prod) != canonical(&target) {
        return Err(Error::NotApplicable("recombined factors do not multiply back to F".into()));
    }
    Ok(RamifiedSolution {
        vectors,
        factors: factors.iter().map(canonical).collect(),
    })
}

/// Runs [`reasonably_ramified_path`] on a primitive separable `F` with
/// `V = ker D_a` and `Z` computed at precision `d_x + 1`.
pub fn reasonably_ramified(fp: &BiPoly) -> Result<RamifiedSolution> {
    let st = RecombState::new(fp)?;
    let v = st.da_kernel()?;
    let z = st.z_space()?;
    reasonably_ramified_path(&st, &v, &z)
}

/// Every partition of `{0..s−1}` whose indicator vectors lie in `V` and span
/// a complement of `Z` in `V`. Exponential; meant as a verification oracle.
pub fn partition_search(v: &SubspaceBasis, z: &SubspaceBasis) -> Result<Vec<Vec<Vec<usize>>>> {
    let s = v.ambient();
    if s > PARTITION_SEARCH_CAP {
        return Err(Error::RecombinationCap(format!(
            "partition search is limited to {PARTITION_SEARCH_CAP} analytic factors"
        )));
    }
    let f = v.field();
    let indicator = |mask: u32| -> Vec<Elem> {
        (0..s)
            .map(|i| if mask >> i & 1 == 1 { f.one() } else { f.zero() })
            .collect()
    };
    let blocks: Vec<u32> = (1u32..(1u32 << s)).filter(|&m| v.contains(&indicator(m))).collect();
    let r = v.dim() - z.dim();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(
        covered: u32,
        full: u32,
        blocks: &[u32],
        stack: &mut Vec<u32>,
        r: usize,
        found: &mut Vec<Vec<u32>>,
    ) {
        if covered == full {
            if stack.len() == r {
                found.push(stack.clone());
            }
            return;
        }
        if stack.len() >= r {
            return;
        }
        let low = (!covered & full).trailing_zeros();
        for &b in blocks {
            if b >> low & 1 == 1 && b & covered == 0 {
                stack.push(b);
                rec(covered | b, full, blocks, stack, r, found);
                stack.pop();
            }
        }
    }
    let mut found = Vec::new();
    let full = if s == 32 { u32::MAX } else { (1u32 << s) - 1 };
    rec(0, full, &blocks, &mut stack, r, &mut found);
    for cand in found {
        let mut rows: Matrix = cand.iter().map(|&m| indicator(m)).collect();
        rows.extend(z.rows().iter().cloned());
        if SubspaceBasis::from_rows(f, s, rows).dim() == v.dim() {
            out.push(
                cand.iter()
                    .map(|&m| (0..s).filter(|i| m >> i & 1 == 1).collect())
                    .collect(),
            );
        }
    }
    Ok(out)
}
