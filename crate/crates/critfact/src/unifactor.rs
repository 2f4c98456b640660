//! Univariate factorization over every supported field.
//!
//! * finite fields (including towers): square-free decomposition with p-th
//!   roots, distinct-degree splitting, then equal-degree splitting driven by a
//!   seeded PRNG (trace map in characteristic 2);
//! * the rationals: Zassenhaus (modular factorization, Hensel lifting, subset
//!   recombination against a Mignotte bound);
//! * algebraic extensions of the rationals: Trager's norm method.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{is_prime, Elem, FieldCtx};
use crate::polyring::{resultant_y, BiPoly, UniPoly};

static SEED: AtomicU64 = AtomicU64::new(0);

/// Seed of the equal-degree splitting PRNG (default 0).
pub fn set_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

/// Largest number of modular factors accepted by subset recombination over `Q`.
pub const RECOMBINATION_CAP: usize = 20;

/// `unit · Π f_i^{m_i}` with monic irreducible `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniFactorization {
    pub unit: Elem,
    pub factors: Vec<(UniPoly, usize)>,
}

impl UniFactorization {
    /// Re-multiplies the factorization.
    pub fn expand(&self, f: &FieldCtx) -> UniPoly {
        let mut r = UniPoly::constant(f, self.unit.clone());
        for (g, m) in &self.factors {
            r = r.mul(&g.pow(*m as u64));
        }
        r
    }

    /// Irreducible factors without multiplicities.
    pub fn irreducibles(&self) -> Vec<UniPoly> {
        self.factors.iter().map(|(g, _)| g.clone()).collect()
    }
}

fn sort_factors(v: &mut Vec<(UniPoly, usize)>) {
    v.sort_by(|a, b| a.0.cmp_lex(&b.0).then(a.1.cmp(&b.1)));
}

/// Factors a nonzero polynomial into monic irreducibles.
pub fn factor_uni(f: &UniPoly) -> Result<UniFactorization> {
    let ctx = f.field();
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let unit = f.lc();
    let g = f.monic();
    let mut factors = if g.deg() == 0 {
        Vec::new()
    } else if ctx.is_finite() {
        factor_finite(&g)
    } else if ctx.is_rationals() {
        factor_rational(&g)?
    } else {
        factor_number_field(&g)?
    };
    sort_factors(&mut factors);
    Ok(UniFactorization { unit, factors })
}

/// Irreducibility test (Rabin's test over finite fields).
pub fn is_irreducible(f: &UniPoly) -> Result<bool> {
    let n = f.deg();
    if n < 1 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let ctx = f.field();
    if let Some(q) = ctx.size() {
        let g = f.monic();
        let n = n as usize;
        let t = UniPoly::var(ctx);
        let frob = |k: usize| -> UniPoly {
            let mut w = t.clone();
            for _ in 0..k {
                w = w.pow_mod(&q, &g);
            }
            w
        };
        if !frob(n).sub(&t).rem(&g).is_zero() {
            return Ok(false);
        }
        for r in prime_divisors(n) {
            if g.gcd(&frob(n / r).sub(&t)).deg() != 0 {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let fac = factor_uni(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// First monic irreducible polynomial of degree `k` over a finite field, in
/// lexicographic order of coefficients from the top.
pub fn first_irreducible(base: &FieldCtx, k: usize) -> UniPoly {
    let q = base.size_u64().expect("finite field of moderate size");
    let mut idx: u64 = 0;
    loop {
        let mut c = Vec::with_capacity(k + 1);
        let mut i = idx;
        for _ in 0..k {
            c.push(base.element_at(i % q).unwrap());
            i /= q;
        }
        c.push(base.one());
        let m = UniPoly::new(base, c);
        if is_irreducible(&m).unwrap_or(false) {
            return m;
        }
        idx += 1;
    }
}

// ---------------------------------------------------------------------------
// finite fields

fn pth_root_poly(f: &UniPoly) -> UniPoly {
    let ctx = f.field();
    let p = ctx.characteristic() as usize;
    let c = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| ctx.pth_root(a).unwrap())
        .collect();
    UniPoly::new(ctx, c)
}

/// Square-free decomposition of a monic polynomial over a finite field.
fn squarefree_finite(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let ctx = f.field();
    let p = ctx.characteristic() as usize;
    let mut out = Vec::new();
    if f.deg() < 1 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_finite(&pth_root_poly(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if fac.deg() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    if c.deg() > 0 {
        for (g, m) in squarefree_finite(&pth_root_poly(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn ddf(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let ctx = f.field();
    let q = ctx.size().unwrap();
    let t = UniPoly::var(ctx);
    let mut out = Vec::new();
    let mut h = f.clone();
    let mut w = t.clone();
    let mut i = 1usize;
    while h.deg() >= 2 * i as isize {
        w = w.pow_mod(&q, &h);
        let g = h.gcd(&w.sub(&t));
        if g.deg() > 0 {
            h = h.div_exact(&g).unwrap();
            w = w.rem(&h);
            out.push((g, i));
        }
        i += 1;
    }
    if h.deg() > 0 {
        let d = h.deg() as usize;
        out.push((h, d));
    }
    out
}

fn edf(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UniPoly>) {
    let n = f.deg() as usize;
    if n == d {
        out.push(f.monic());
        return;
    }
    let ctx = f.field();
    let p = ctx.characteristic();
    let q = ctx.size().unwrap();
    loop {
        let a = UniPoly::new(ctx, (0..n).map(|_| ctx.random(rng)).collect());
        if a.deg() < 1 {
            continue;
        }
        let b = if p == 2 {
            let k = ctx.prime_degree() * d;
            let mut s = a.clone();
            let mut cur = a.clone();
            for _ in 1..k {
                cur = cur.mul(&cur).rem(f);
                s = s.add(&cur);
            }
            s
        } else {
            let e = (num_traits::pow(q.clone(), d) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&e, f).sub(&UniPoly::one(ctx))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n as isize {
            let h = f.div_exact(&g).unwrap();
            edf(&g, d, rng, out);
            edf(&h, d, rng, out);
            return;
        }
    }
}

fn factor_finite(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut out = Vec::new();
    for (g, m) in squarefree_finite(f) {
        for (h, d) in ddf(&g) {
            let mut parts = Vec::new();
            edf(&h, d, &mut rng, &mut parts);
            out.extend(parts.into_iter().map(|x| (x, m)));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// characteristic zero: square-free decomposition

/// Yun's square-free decomposition of a monic polynomial in characteristic 0.
fn squarefree_char0(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.deg() < 1 {
        return out;
    }
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.div_exact(&a0).unwrap();
    let mut c = d.div_exact(&a0).unwrap();
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&dd);
        if a.deg() > 0 {
            out.push((a.monic(), i));
        }
        b = b.div_exact(&a).unwrap();
        c = dd.div_exact(&a).unwrap();
        dd = c.sub(&b.derivative());
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// the rationals: Zassenhaus

type ZPoly = Vec<BigInt>;

fn z_trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    z_trim(c)
}

fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    z_trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn z_scale(a: &ZPoly, c: &BigInt) -> ZPoly {
    z_trim(a.iter().map(|x| x * c).collect())
}

fn z_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    z_trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn z_symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    z_trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn z_content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn z_primitive(a: &ZPoly) -> ZPoly {
    let c = z_content(a);
    if c.is_zero() {
        return a.clone();
    }
    let mut v: ZPoly = a.iter().map(|x| x / &c).collect();
    if v.last().is_some_and(|x| x.is_negative()) {
        v = v.iter().map(|x| -x).collect();
    }
    v
}

/// Exact quotient in `Z[t]`, if any.
fn z_div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    let lb = b.last().unwrap();
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (qq, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &qq * bc;
        }
        q[k] = qq;
    }
    if r.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(z_trim(q))
}

fn to_gfp(a: &ZPoly, fp: &FieldCtx) -> UniPoly {
    UniPoly::new(fp, a.iter().map(|x| fp.from_bigint(x)).collect())
}

fn from_gfp(a: &UniPoly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|e| match e {
            Elem::P(v) => BigInt::from(*v),
            _ => unreachable!(),
        })
        .collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

/// Lifts `h ≡ lc·A·B (mod p)` with monic coprime `A`, `B` to modulus `p^k`.
fn hensel_two(h: &ZPoly, lc: &BigInt, a: &UniPoly, b: &UniPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let fp = a.field().clone();
    let (g, s, t) = a.xgcd(b);
    debug_assert!(g.is_one());
    let _ = (s, g);
    let pb = BigInt::from(p);
    let lc_inv = fp.inv(&fp.from_bigint(lc)).unwrap();
    let mut za = from_gfp(a);
    let mut zb = from_gfp(b);
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = z_scale(&z_mul(&za, &zb), lc);
        let diff = z_sub(h, &prod);
        let e: ZPoly = diff.iter().map(|x| x / &pj).collect();
        let ep = to_gfp(&e, &fp).scale(&lc_inv);
        let da = ep.mul(&t).rem(a);
        let db = ep.sub(&b.mul(&da)).div_exact(a).unwrap();
        let da_z = from_gfp(&da);
        let db_z = from_gfp(&db);
        za = z_trim(
            (0..za.len().max(da_z.len()))
                .map(|i| za.get(i).cloned().unwrap_or_default() + &pj * da_z.get(i).cloned().unwrap_or_default())
                .collect(),
        );
        zb = z_trim(
            (0..zb.len().max(db_z.len()))
                .map(|i| zb.get(i).cloned().unwrap_or_default() + &pj * db_z.get(i).cloned().unwrap_or_default())
                .collect(),
        );
        pj *= &pb;
    }
    (za, zb)
}

fn hensel_multi(h: &ZPoly, lc: &BigInt, factors: &[UniPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    if factors.len() == 1 {
        let inv = mod_inverse(lc, &pk);
        return vec![z_mod(&z_scale(h, &inv), &pk)];
    }
    let mid = factors.len() / 2;
    let fp = factors[0].field();
    let a = factors[..mid].iter().fold(UniPoly::one(fp), |acc, g| acc.mul(g));
    let b = factors[mid..].iter().fold(UniPoly::one(fp), |acc, g| acc.mul(g));
    let (za, zb) = hensel_two(h, lc, &a, &b, p, k);
    let one = BigInt::one();
    let mut out = hensel_multi(&za, &one, &factors[..mid], p, k);
    out.extend(hensel_multi(&zb, &one, &factors[mid..], p, k));
    out
}

fn choose_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factors of a square-free primitive integer polynomial.
fn zassenhaus(h: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = h.len() - 1;
    if n <= 1 {
        return Ok(vec![h.clone()]);
    }
    let lc = h.last().unwrap().clone();
    let hd: ZPoly = z_trim(h.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect());
    let mut best: Option<(u64, Vec<UniPoly>)> = None;
    let mut good = 0;
    let mut cand = 3u64;
    while good < 5 && cand < 100_000 {
        if is_prime(cand) && !(&lc % BigInt::from(cand)).is_zero() {
            let fp = FieldCtx::prime(cand).unwrap();
            let hp = to_gfp(h, &fp);
            if hp.gcd(&to_gfp(&hd, &fp)).deg() == 0 {
                good += 1;
                let facs: Vec<UniPoly> = factor_finite(&hp.monic()).into_iter().map(|(g, _)| g).collect();
                if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
                    best = Some((cand, facs));
                }
            }
        }
        cand += 2;
    }
    let (p, mut modf) = best.ok_or_else(|| Error::InvalidInput("no suitable prime".into()))?;
    if modf.len() == 1 {
        return Ok(vec![h.clone()]);
    }
    if modf.len() > RECOMBINATION_CAP {
        return Err(Error::RecombinationCap(format!(
            "{} modular factors exceed the cap of {}",
            modf.len(),
            RECOMBINATION_CAP
        )));
    }
    sort_by_lex(&mut modf);
    let norm2: BigInt = h.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + BigInt::one()) * num_traits::pow(BigInt::from(2), n) * lc.abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2 {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_multi(h, &lc, &modf, p, k);
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut cur = h.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        let lcur = cur.last().unwrap().clone();
        for sub in choose_subsets(remaining.len(), size) {
            let mut g = vec![lcur.clone()];
            for &i in &sub {
                g = z_mod(&z_mul(&g, &lifted[remaining[i]]), &pk);
            }
            let cand = z_primitive(&z_symmetric(&g, &pk));
            if let Some(q) = z_div_exact(&cur, &cand) {
                out.push(cand);
                cur = q;
                let drop: Vec<usize> = sub.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|i| !drop.contains(i));
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(z_primitive(&cur));
    Ok(out)
}

fn sort_by_lex(v: &mut [UniPoly]) {
    v.sort_by(|a, b| a.cmp_lex(b));
}

fn factor_rational(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let q = f.field().clone();
    let mut out = Vec::new();
    for (g, m) in squarefree_char0(f) {
        let rats: Vec<BigRational> = g.coeffs().iter().map(|e| q.to_rational(e).unwrap()).collect();
        let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let z: ZPoly = rats.iter().map(|r| (r * BigRational::from_integer(l.clone())).to_integer()).collect();
        let z = z_primitive(&z);
        // pull out powers of t first: they are trivially irreducible
        let v = z.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if v > 0 {
            out.push((UniPoly::var(&q), m));
        }
        let z: ZPoly = z[v..].to_vec();
        if z.len() > 1 {
            for h in zassenhaus(&z)? {
                let p = UniPoly::new(&q, h.iter().map(|c| q.from_bigint(c)).collect()).monic();
                out.push((p, m));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// algebraic extensions of characteristic 0: Trager

/// `N(g)(y) = Res_t(m(t), g(t, y))` for `g` over `base[t]/(m)`.
pub fn norm_poly(g: &UniPoly) -> UniPoly {
    let l = g.field();
    let base = l.base().expect("extension field");
    let m = UniPoly::new(base, l.modulus().unwrap().to_vec());
    let k = l.ext_degree();
    // main variable t, coefficients in base[y]
    let rows: Vec<UniPoly> = (0..k)
        .map(|i| {
            UniPoly::new(
                base,
                g.coeffs().iter().map(|c| l.ext_coeffs(c)[i].clone()).collect(),
            )
        })
        .collect();
    let gb = BiPoly::from_y_coeffs(base, rows);
    let mb = BiPoly::from_y_poly(&m);
    resultant_y(&mb, &gb)
}

fn factor_number_field(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let mut out = Vec::new();
    for (g, m) in squarefree_char0(f) {
        for h in trager(&g)? {
            out.push((h, m));
        }
    }
    Ok(out)
}

fn trager(h: &UniPoly) -> Result<Vec<UniPoly>> {
    if h.deg() <= 1 {
        return Ok(vec![h.monic()]);
    }
    let l = h.field().clone();
    let base = l.base().unwrap().clone();
    let theta = l.gen();
    for idx in 0..64u64 {
        let s = base.element_at(idx).unwrap();
        let shift = l.mul(&l.embed(&s), &theta);
        let g = h.taylor_shift(&l.neg(&shift));
        let n = norm_poly(&g);
        if n.gcd(&n.derivative()).deg() != 0 {
            continue;
        }
        let fac = factor_uni(&n)?;
        if fac.factors.len() == 1 {
            return Ok(vec![h.monic()]);
        }
        let mut out = Vec::new();
        for (ni, _) in fac.factors {
            let gi = g.gcd(&ni.embed(&l));
            if gi.deg() > 0 {
                out.push(gi.taylor_shift(&shift).monic());
            }
        }
        return Ok(out);
    }
    Err(Error::NotApplicable("no square-free norm found".into()))
}

// ---------------------------------------------------------------------------
// helpers used by the recombination pipeline

/// Irreducible `a` coprime to `u`, taken from `(x^{q^n} - x)/gcd(x^{q^n} - x, u)`
/// for the smallest `n` making the quotient non-constant.
pub fn find_irreducible_coprime(u: &UniPoly) -> Result<UniPoly> {
    let ctx = u.field();
    let q = ctx
        .size()
        .ok_or_else(|| Error::NotApplicable("irreducible search needs a finite field".into()))?;
    if u.is_zero() {
        return Err(Error::InvalidInput("u must be nonzero".into()));
    }
    let t = UniPoly::var(ctx);
    let mut n = 1usize;
    loop {
        let e = num_traits::pow(q.clone(), n);
        let deg = e.to_usize().ok_or_else(|| Error::InvalidInput("field too large".into()))?;
        let w = UniPoly::monomial(ctx, ctx.one(), deg).sub(&t);
        let quo = w.div_exact(&w.gcd(u)).unwrap();
        if quo.deg() > 0 {
            let fac = factor_uni(&quo)?;
            let mut irr = fac.irreducibles();
            irr.sort_by(|a, b| a.cmp_lex(b));
            return Ok(irr.remove(0));
        }
        n += 1;
    }
}

/// First `α` in the fixed enumeration with `F(0, α) ≠ 0`.
pub fn find_nonroot(fp: &BiPoly) -> Option<Elem> {
    let ctx = fp.field();
    let g = fp.eval_x(&ctx.zero());
    if g.is_zero() {
        return None;
    }
    let limit = g.deg().max(0) as u64 + 1;
    let mut idx = 0u64;
    loop {
        let a = ctx.element_at(idx)?;
        if !ctx.is_zero(&g.eval(&a)) {
            return Some(a);
        }
        idx += 1;
        if ctx.characteristic() == 0 && idx > limit {
            return None;
        }
    }
}

/// Roots in the coefficient field.
pub fn roots(f: &UniPoly) -> Result<Vec<Elem>> {
    let ctx = f.field();
    Ok(factor_uni(f)?
        .factors
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| ctx.neg(&g.coeff(0)))
        .collect())
}

