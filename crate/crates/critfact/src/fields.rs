//! Exact coefficient fields.
//!
//! A [`FieldCtx`] describes one of: the rationals, a prime field `GF(p)`, or a
//! simple algebraic extension `base[t]/(m)` of another context. Extensions may
//! be stacked; the library uses towers internally for residue fields, while the
//! field options of the front end only produce `Q`, `GF(p)` and `GF(p^k)`.
//!
//! Elements are plain [`Elem`] values interpreted relative to a context. The
//! checked wrapper [`FieldElem`] carries its context and refuses to mix fields.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A field element, meaningful only together with its [`FieldCtx`].
///
/// Extension elements list their coefficients over the immediate base field,
/// lowest power first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Q(BigRational),
    P(u64),
    E(Vec<Elem>),
}

#[derive(Debug)]
enum Kind {
    Rationals,
    Prime {
        p: u64,
    },
    Ext {
        base: FieldCtx,
        /// Monic modulus, coefficients over `base`, lowest first.
        modulus: Vec<Elem>,
        var: String,
        p: u64,
        prime_degree: usize,
    },
}

/// Descriptor of a coefficient field; cheap to clone.
#[derive(Clone, Debug)]
pub struct FieldCtx(Arc<Kind>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Kind::Rationals, Kind::Rationals) => true,
            (Kind::Prime { p: a }, Kind::Prime { p: b }) => a == b,
            (
                Kind::Ext {
                    base: b1,
                    modulus: m1,
                    ..
                },
                Kind::Ext {
                    base: b2,
                    modulus: m2,
                    ..
                },
            ) => b1 == b2 && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for FieldCtx {}

/// Deterministic Miller–Rabin test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for b in BASES {
        let mut x = powmod(b, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl FieldCtx {
    /// The field of rational numbers.
    pub fn rationals() -> Self {
        FieldCtx(Arc::new(Kind::Rationals))
    }

    /// The prime field `GF(p)`; `p` is checked by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= (1u64 << 62) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(FieldCtx(Arc::new(Kind::Prime { p })))
    }

    /// `GF(p^k)` with the given monic modulus over `GF(p)` (coefficients
    /// lowest first), or the lexicographically first monic irreducible one.
    pub fn gf(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        let base = FieldCtx::prime(p)?;
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        match modulus {
            None if k == 1 => Ok(base),
            None => {
                let m = crate::unifactor::first_irreducible(&base, k);
                Ok(FieldCtx::extension_unchecked(&base, m.coeffs().to_vec(), "t"))
            }
            Some(m) => {
                if m.len() != k + 1 || m[k] % p != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                let coeffs: Vec<Elem> = m.iter().map(|&c| Elem::P(c % p)).collect();
                if k == 1 {
                    return Ok(base);
                }
                FieldCtx::extension(&base, coeffs, "t")
            }
        }
    }

    /// `base[var]/(modulus)`, checking that the modulus is monic and irreducible.
    pub fn extension(base: &FieldCtx, modulus: Vec<Elem>, var: &str) -> Result<Self> {
        let m = crate::polyring::UniPoly::new(base, modulus.clone());
        if m.deg() < 1 || !base.is_one(&m.lc()) {
            return Err(Error::InvalidField("modulus must be monic and non-constant".into()));
        }
        if !crate::unifactor::is_irreducible(&m)? {
            return Err(Error::InvalidField("modulus is not irreducible".into()));
        }
        Ok(FieldCtx::extension_unchecked(base, modulus, var))
    }

    /// `base[var]/(modulus)` for a modulus already known to be monic irreducible.
    pub fn extension_unchecked(base: &FieldCtx, mut modulus: Vec<Elem>, var: &str) -> Self {
        trim(base, &mut modulus);
        let p = base.characteristic();
        let prime_degree = base.prime_degree() * (modulus.len() - 1);
        FieldCtx(Arc::new(Kind::Ext {
            base: base.clone(),
            modulus,
            var: var.to_string(),
            p,
            prime_degree,
        }))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(&*self.0, Kind::Rationals)
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(&*self.0, Kind::Prime { .. })
    }

    pub fn is_extension(&self) -> bool {
        matches!(&*self.0, Kind::Ext { .. })
    }

    /// Characteristic; 0 for fields over the rationals.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Kind::Rationals => 0,
            Kind::Prime { p } => *p,
            Kind::Ext { p, .. } => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Degree over the prime field (over `Q` in characteristic 0).
    pub fn prime_degree(&self) -> usize {
        match &*self.0 {
            Kind::Rationals | Kind::Prime { .. } => 1,
            Kind::Ext { prime_degree, .. } => *prime_degree,
        }
    }

    /// Degree over the immediate base field (1 for base fields).
    pub fn ext_degree(&self) -> usize {
        match &*self.0 {
            Kind::Ext { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Number of elements, `None` for infinite fields.
    pub fn size(&self) -> Option<BigUint> {
        match self.characteristic() {
            0 => None,
            p => Some(num_traits::pow(BigUint::from(p), self.prime_degree())),
        }
    }

    /// Number of elements when it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        self.size().and_then(|s| s.to_u64())
    }

    pub fn base(&self) -> Option<&FieldCtx> {
        match &*self.0 {
            Kind::Ext { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Monic modulus of an extension over its immediate base.
    pub fn modulus(&self) -> Option<&[Elem]> {
        match &*self.0 {
            Kind::Ext { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn var(&self) -> &str {
        match &*self.0 {
            Kind::Ext { var, .. } => var,
            _ => "",
        }
    }

    /// The prime subfield (or `Q`).
    pub fn prime_field(&self) -> FieldCtx {
        match &*self.0 {
            Kind::Ext { base, .. } => base.prime_field(),
            _ => self.clone(),
        }
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            Kind::Rationals => Elem::Q(BigRational::zero()),
            Kind::Prime { .. } => Elem::P(0),
            Kind::Ext { .. } => Elem::E(Vec::new()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match &*self.0 {
            Kind::Rationals => Elem::Q(BigRational::from_integer(BigInt::from(n))),
            Kind::Prime { p } => Elem::P(n.rem_euclid(*p as i64) as u64),
            Kind::Ext { base, .. } => self.embed(&base.from_i64(n)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &*self.0 {
            Kind::Rationals => Elem::Q(BigRational::from_integer(n.clone())),
            Kind::Prime { p } => {
                let r = n.mod_floor(&BigInt::from(*p));
                Elem::P(r.to_u64().unwrap_or(0))
            }
            Kind::Ext { base, .. } => self.embed(&base.from_bigint(n)),
        }
    }

    /// Image of a rational number; fails when the denominator vanishes.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        match &*self.0 {
            Kind::Rationals => Ok(Elem::Q(q.clone())),
            _ => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                self.div(&n, &d)
            }
        }
    }

    /// Embeds an element of the immediate base field.
    pub fn embed(&self, a: &Elem) -> Elem {
        match &*self.0 {
            Kind::Ext { base, .. } => {
                if base.is_zero(a) {
                    Elem::E(Vec::new())
                } else {
                    Elem::E(vec![a.clone()])
                }
            }
            _ => a.clone(),
        }
    }

    /// Embeds an element of any field below this one in the tower.
    pub fn embed_from(&self, sub: &FieldCtx, a: &Elem) -> Elem {
        if sub == self {
            return a.clone();
        }
        match &*self.0 {
            Kind::Ext { base, .. } => self.embed(&base.embed_from(sub, a)),
            _ => a.clone(),
        }
    }

    /// The class of the adjoined variable.
    pub fn gen(&self) -> Elem {
        match &*self.0 {
            Kind::Ext { base, modulus, .. } => {
                let mut v = vec![base.zero(), base.one()];
                reduce(base, &mut v, modulus);
                Elem::E(v)
            }
            _ => self.one(),
        }
    }

    /// Coefficients over the immediate base, padded to the extension degree.
    pub fn ext_coeffs(&self, a: &Elem) -> Vec<Elem> {
        match (&*self.0, a) {
            (Kind::Ext { base, modulus, .. }, Elem::E(v)) => {
                let mut out = v.clone();
                out.resize(modulus.len() - 1, base.zero());
                out
            }
            _ => vec![a.clone()],
        }
    }

    /// Element with the given coefficients over the immediate base (reduced).
    pub fn from_ext_coeffs(&self, mut v: Vec<Elem>) -> Elem {
        match &*self.0 {
            Kind::Ext { base, modulus, .. } => {
                reduce(base, &mut v, modulus);
                Elem::E(v)
            }
            _ => v.into_iter().next().unwrap_or_else(|| self.zero()),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(q) => q.is_zero(),
            Elem::P(x) => *x == 0,
            Elem::E(v) => v.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match (&*self.0, a) {
            (_, Elem::Q(q)) => q.is_one(),
            (_, Elem::P(x)) => *x == 1,
            (Kind::Ext { base, .. }, Elem::E(v)) => v.len() == 1 && base.is_one(&v[0]),
            _ => false,
        }
    }

    /// True when `a` lies in the immediate base field.
    pub fn in_base(&self, a: &Elem) -> bool {
        match a {
            Elem::E(v) => v.len() <= 1,
            _ => true,
        }
    }

    /// Constant coefficient of an extension element (its base part when it lies in the base).
    pub fn base_part(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (Kind::Ext { base, .. }, Elem::E(v)) => v.first().cloned().unwrap_or_else(|| base.zero()),
            _ => a.clone(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (_, Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (Kind::Prime { p }, Elem::P(x), Elem::P(y)) => {
                let s = x + y;
                Elem::P(if s >= *p { s - p } else { s })
            }
            (Kind::Ext { base, .. }, Elem::E(x), Elem::E(y)) => {
                let n = x.len().max(y.len());
                let mut v = Vec::with_capacity(n);
                for i in 0..n {
                    v.push(match (x.get(i), y.get(i)) {
                        (Some(s), Some(t)) => base.add(s, t),
                        (Some(s), None) => s.clone(),
                        (None, Some(t)) => t.clone(),
                        (None, None) => unreachable!(),
                    });
                }
                trim(base, &mut v);
                Elem::E(v)
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (_, Elem::Q(x)) => Elem::Q(-x),
            (Kind::Prime { p }, Elem::P(x)) => Elem::P(if *x == 0 { 0 } else { p - x }),
            (Kind::Ext { base, .. }, Elem::E(x)) => Elem::E(x.iter().map(|c| base.neg(c)).collect()),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (_, Elem::Q(x), Elem::Q(y)) => Elem::Q(x - y),
            (Kind::Prime { p }, Elem::P(x), Elem::P(y)) => {
                Elem::P(if x >= y { x - y } else { p - (y - x) })
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (_, Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Kind::Prime { p }, Elem::P(x), Elem::P(y)) => {
                Elem::P(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (Kind::Ext { base, modulus, .. }, Elem::E(x), Elem::E(y)) => {
                if x.is_empty() || y.is_empty() {
                    return Elem::E(Vec::new());
                }
                let mut v = vec![base.zero(); x.len() + y.len() - 1];
                for (i, s) in x.iter().enumerate() {
                    if base.is_zero(s) {
                        continue;
                    }
                    for (j, t) in y.iter().enumerate() {
                        let prod = base.mul(s, t);
                        v[i + j] = base.add(&v[i + j], &prod);
                    }
                }
                reduce(base, &mut v, modulus);
                Elem::E(v)
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    /// Multiplies by an element of the immediate base field.
    pub fn mul_base(&self, a: &Elem, c: &Elem) -> Elem {
        match (&*self.0, a) {
            (Kind::Ext { base, .. }, Elem::E(x)) => {
                let mut v: Vec<Elem> = x.iter().map(|s| base.mul(s, c)).collect();
                trim(base, &mut v);
                Elem::E(v)
            }
            _ => self.mul(a, c),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (&*self.0, a) {
            (_, Elem::Q(x)) => Ok(Elem::Q(x.recip())),
            (Kind::Prime { p }, Elem::P(x)) => Ok(Elem::P(mod_pow(*x, p - 2, *p))),
            (Kind::Ext { base, modulus, .. }, Elem::E(x)) => {
                let v = inv_mod(base, x, modulus).ok_or(Error::DivisionByZero)?;
                Ok(Elem::E(v))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut r = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    /// Signed integer power; negative exponents invert.
    pub fn pow_i(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// The Frobenius map `a ↦ a^p`.
    pub fn frobenius(&self, a: &Elem) -> Result<Elem> {
        match self.characteristic() {
            0 => Err(Error::NotApplicable("frobenius in characteristic 0".into())),
            p => Ok(self.pow(a, p)),
        }
    }

    /// Inverse of the Frobenius map.
    pub fn pth_root(&self, a: &Elem) -> Result<Elem> {
        let p = self.characteristic();
        if p == 0 {
            return Err(Error::NotApplicable("p-th root in characteristic 0".into()));
        }
        let q = self.size().expect("finite field");
        Ok(self.pow_big(a, &(q / BigUint::from(p))))
    }

    /// Coordinates over the prime field in the power basis of the tower.
    pub fn prime_coords(&self, a: &Elem) -> Result<Vec<u64>> {
        match (&*self.0, a) {
            (Kind::Rationals, _) => Err(Error::NotApplicable("prime coordinates over Q".into())),
            (Kind::Prime { .. }, Elem::P(x)) => Ok(vec![*x]),
            (Kind::Ext { base, .. }, _) => {
                if base.is_rationals() {
                    return Err(Error::NotApplicable("prime coordinates over Q".into()));
                }
                let mut out = Vec::with_capacity(self.prime_degree());
                for c in self.ext_coeffs(a) {
                    out.extend(base.prime_coords(&c)?);
                }
                Ok(out)
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    /// Inverse of [`FieldCtx::prime_coords`].
    pub fn from_prime_coords(&self, c: &[u64]) -> Elem {
        match &*self.0 {
            Kind::Rationals => Elem::Q(BigRational::from_integer(BigInt::from(c[0]))),
            Kind::Prime { p } => Elem::P(c[0] % p),
            Kind::Ext { base, modulus, .. } => {
                let bd = base.prime_degree();
                let mut v: Vec<Elem> = (0..modulus.len() - 1)
                    .map(|i| base.from_prime_coords(&c[i * bd..(i + 1) * bd]))
                    .collect();
                trim(base, &mut v);
                Elem::E(v)
            }
        }
    }

    /// Deterministic enumeration: `0, 1, -1, 2, -2, ...` over `Q`; base-p digits
    /// of the index as prime coordinates over finite fields.
    pub fn element_at(&self, index: u64) -> Option<Elem> {
        let p = self.characteristic();
        if p == 0 {
            let k = index.div_ceil(2) as i64;
            let v = if index % 2 == 1 { k } else { -k };
            return Some(self.from_i64(v));
        }
        if let Some(q) = self.size_u64() {
            if index >= q {
                return None;
            }
        }
        let mut coords = vec![0u64; self.prime_degree()];
        let mut i = index;
        for c in coords.iter_mut() {
            *c = i % p;
            i /= p;
        }
        if i > 0 {
            return None;
        }
        Some(self.from_prime_coords(&coords))
    }

    /// Uniformly random element of a finite field; small random integer over `Q`.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Elem {
        let p = self.characteristic();
        if p == 0 {
            return self.from_i64(rng.gen_range(-8..=8));
        }
        let coords: Vec<u64> = (0..self.prime_degree()).map(|_| rng.gen_range(0..p)).collect();
        self.from_prime_coords(&coords)
    }

    /// Total order used for canonical output, following [`FieldCtx::element_at`]:
    /// `0, 1, -1, 2, -2, ...` over `Q`, prime coordinates read from the top otherwise.
    pub fn cmp_elem(&self, a: &Elem, b: &Elem) -> Ordering {
        match (&*self.0, a, b) {
            (_, Elem::Q(x), Elem::Q(y)) => x
                .abs()
                .cmp(&y.abs())
                .then_with(|| x.is_negative().cmp(&y.is_negative())),
            (_, Elem::P(x), Elem::P(y)) => x.cmp(y),
            (Kind::Ext { base, .. }, Elem::E(x), Elem::E(y)) => x.len().cmp(&y.len()).then_with(|| {
                for (s, t) in x.iter().rev().zip(y.iter().rev()) {
                    let o = base.cmp_elem(s, t);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }),
            _ => a.cmp(b),
        }
    }

    /// Human-readable form of an element.
    pub fn fmt_elem(&self, a: &Elem) -> String {
        match (&*self.0, a) {
            (_, Elem::Q(q)) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            (_, Elem::P(x)) => x.to_string(),
            (Kind::Ext { base, var, .. }, Elem::E(v)) => {
                if v.is_empty() {
                    return "0".into();
                }
                let mut terms = Vec::new();
                for (i, c) in v.iter().enumerate().rev() {
                    if base.is_zero(c) {
                        continue;
                    }
                    let cs = base.fmt_elem(c);
                    let mono = match i {
                        0 => String::new(),
                        1 => var.clone(),
                        _ => format!("{var}^{i}"),
                    };
                    terms.push(if i == 0 {
                        cs
                    } else if base.is_one(c) {
                        mono
                    } else if base.is_atomic(c) {
                        format!("{cs}*{mono}")
                    } else {
                        format!("({cs})*{mono}")
                    });
                }
                let mut s = String::new();
                for (k, t) in terms.iter().enumerate() {
                    if k > 0 && !t.starts_with('-') {
                        s.push('+');
                    }
                    s.push_str(t);
                }
                s
            }
            _ => "?".into(),
        }
    }

    /// True when the printed form of `a` needs no parentheses as a factor.
    pub fn is_atomic(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(q) => q.is_integer() && !q.is_negative(),
            Elem::P(_) => true,
            Elem::E(v) => v.len() <= 1 && v.iter().all(|c| self.base().map_or(true, |b| b.is_atomic(c))),
        }
    }

    /// Signed representative in `(-p/2, p/2]` of a prime-field element; the
    /// rational value itself over `Q`.
    pub fn to_rational(&self, a: &Elem) -> Option<BigRational> {
        match a {
            Elem::Q(q) => Some(q.clone()),
            Elem::P(x) => Some(BigRational::from_integer(BigInt::from(*x))),
            Elem::E(v) => match v.len() {
                0 => Some(BigRational::zero()),
                1 => self.base()?.to_rational(&v[0]),
                _ => None,
            },
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Kind::Rationals => write!(f, "Q"),
            Kind::Prime { p } => write!(f, "GF({p})"),
            Kind::Ext {
                base, modulus, var, ..
            } => {
                let m = crate::polyring::UniPoly::new(base, modulus.clone());
                write!(f, "{base}[{var}]/({})", m.to_string_var(var))
            }
        }
    }
}

fn trim(base: &FieldCtx, v: &mut Vec<Elem>) {
    while v.last().is_some_and(|c| base.is_zero(c)) {
        v.pop();
    }
}

/// Reduces `v` modulo the monic `m` in place.
fn reduce(base: &FieldCtx, v: &mut Vec<Elem>, m: &[Elem]) {
    let k = m.len() - 1;
    trim(base, v);
    while v.len() > k {
        let top = v.pop().unwrap();
        if base.is_zero(&top) {
            continue;
        }
        let shift = v.len() - k;
        for i in 0..k {
            let t = base.mul(&top, &m[i]);
            v[shift + i] = base.sub(&v[shift + i], &t);
        }
        trim(base, v);
    }
}

/// Inverse of `a` modulo the irreducible `m` by the extended Euclidean algorithm.
fn inv_mod(base: &FieldCtx, a: &[Elem], m: &[Elem]) -> Option<Vec<Elem>> {
    use crate::polyring::UniPoly;
    let a = UniPoly::new(base, a.to_vec());
    let m = UniPoly::new(base, m.to_vec());
    let (g, s, _) = a.xgcd(&m);
    if g.deg() != 0 {
        return None;
    }
    let s = s.scale(&base.inv(&g.lc()).ok()?);
    Some(s.rem(&m).coeffs().to_vec())
}

/// A field element bundled with its context; operations check the contexts.
#[derive(Clone, Debug)]
pub struct FieldElem {
    ctx: FieldCtx,
    val: Elem,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.val == other.val
    }
}

impl FieldElem {
    pub fn new(ctx: &FieldCtx, val: Elem) -> Self {
        FieldElem {
            ctx: ctx.clone(),
            val,
        }
    }

    pub fn from_i64(ctx: &FieldCtx, n: i64) -> Self {
        FieldElem::new(ctx, ctx.from_i64(n))
    }

    /// The rational `n/d`; fails if `d` vanishes in the field.
    pub fn ratio(ctx: &FieldCtx, n: i64, d: i64) -> Result<Self> {
        let v = ctx.div(&ctx.from_i64(n), &ctx.from_i64(d))?;
        Ok(FieldElem::new(ctx, v))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn value(&self) -> &Elem {
        &self.val
    }

    fn check(&self, o: &FieldElem) -> Result<()> {
        if self.ctx == o.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        Ok(FieldElem::new(&self.ctx, self.ctx.add(&self.val, &o.val)))
    }

    pub fn sub(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        Ok(FieldElem::new(&self.ctx, self.ctx.sub(&self.val, &o.val)))
    }

    pub fn mul(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        Ok(FieldElem::new(&self.ctx, self.ctx.mul(&self.val, &o.val)))
    }

    pub fn div(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        Ok(FieldElem::new(&self.ctx, self.ctx.div(&self.val, &o.val)?))
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem::new(&self.ctx, self.ctx.neg(&self.val))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(FieldElem::new(&self.ctx, self.ctx.inv(&self.val)?))
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        FieldElem::new(&self.ctx, self.ctx.pow(&self.val, e))
    }

    pub fn is_zero(&self) -> bool {
        self.ctx.is_zero(&self.val)
    }

    pub fn frobenius(&self) -> Result<FieldElem> {
        Ok(FieldElem::new(&self.ctx, self.ctx.frobenius(&self.val)?))
    }

    pub fn prime_coords(&self) -> Result<Vec<u64>> {
        self.ctx.prime_coords(&self.val)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.fmt_elem(&self.val))
    }
}
