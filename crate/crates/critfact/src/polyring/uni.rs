//! Dense univariate polynomials over a [`FieldCtx`].

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug)]
pub struct UniPoly {
    f: FieldCtx,
    c: Vec<Elem>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    pub fn new(f: &FieldCtx, mut c: Vec<Elem>) -> Self {
        while c.last().is_some_and(|a| f.is_zero(a)) {
            c.pop();
        }
        UniPoly { f: f.clone(), c }
    }

    pub fn zero(f: &FieldCtx) -> Self {
        UniPoly {
            f: f.clone(),
            c: Vec::new(),
        }
    }

    pub fn one(f: &FieldCtx) -> Self {
        UniPoly::constant(f, f.one())
    }

    pub fn constant(f: &FieldCtx, a: Elem) -> Self {
        UniPoly::new(f, vec![a])
    }

    /// `a·t^k`.
    pub fn monomial(f: &FieldCtx, a: Elem, k: usize) -> Self {
        let mut c = vec![f.zero(); k];
        c.push(a);
        UniPoly::new(f, c)
    }

    /// The variable itself.
    pub fn var(f: &FieldCtx) -> Self {
        UniPoly::monomial(f, f.one(), 1)
    }

    pub fn from_i64s(f: &FieldCtx, c: &[i64]) -> Self {
        UniPoly::new(f, c.iter().map(|&a| f.from_i64(a)).collect())
    }

    pub fn field(&self) -> &FieldCtx {
        &self.f
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.c
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.f.is_one(&self.c[0])
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).cloned().unwrap_or_else(|| self.f.zero())
    }

    pub fn coeff_ref(&self, i: usize) -> Option<&Elem> {
        self.c.get(i)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Elem {
        self.c.last().cloned().unwrap_or_else(|| self.f.zero())
    }

    /// Index of the lowest nonzero coefficient.
    pub fn val(&self) -> Option<usize> {
        self.c.iter().position(|a| !self.f.is_zero(a))
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let f = &self.f;
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            });
        }
        UniPoly::new(f, c)
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let f = &self.f;
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => f.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => f.neg(b),
                _ => unreachable!(),
            });
        }
        UniPoly::new(f, c)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            f: self.f.clone(),
            c: self.c.iter().map(|a| self.f.neg(a)).collect(),
        }
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        self.mul_trunc(o, usize::MAX)
    }

    /// Product truncated below degree `n`.
    pub fn mul_trunc(&self, o: &UniPoly, n: usize) -> UniPoly {
        if self.is_zero() || o.is_zero() || n == 0 {
            return UniPoly::zero(&self.f);
        }
        let f = &self.f;
        let len = (self.c.len() + o.c.len() - 1).min(n);
        let mut c = vec![f.zero(); len];
        for (i, a) in self.c.iter().enumerate() {
            if i >= len {
                break;
            }
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                let t = f.mul(a, b);
                c[i + j] = f.add(&c[i + j], &t);
            }
        }
        UniPoly::new(f, c)
    }

    pub fn scale(&self, a: &Elem) -> UniPoly {
        if self.f.is_zero(a) {
            return UniPoly::zero(&self.f);
        }
        UniPoly::new(&self.f, self.c.iter().map(|b| self.f.mul(a, b)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.f.zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { f: self.f.clone(), c }
    }

    /// Exact division by `t^k`, dropping lower terms.
    pub fn unshift(&self, k: usize) -> UniPoly {
        UniPoly::new(&self.f, self.c.iter().skip(k).cloned().collect())
    }

    /// Terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> UniPoly {
        UniPoly::new(&self.f, self.c.iter().take(n).cloned().collect())
    }

    /// Terms of degree in `[lo, hi)`.
    pub fn slice(&self, lo: usize, hi: usize) -> UniPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, a)| if i >= lo && i < hi { a.clone() } else { self.f.zero() })
            .collect();
        UniPoly::new(&self.f, c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, b: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!b.is_zero(), "division by the zero polynomial");
        let f = &self.f;
        if self.deg() < b.deg() {
            return (UniPoly::zero(f), self.clone());
        }
        let inv = f.inv(&b.lc()).expect("nonzero leading coefficient");
        let db = b.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![f.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if f.is_zero(top) {
                continue;
            }
            let m = f.mul(top, &inv);
            for (i, bc) in b.c.iter().enumerate() {
                let t = f.mul(&m, bc);
                r[k + i] = f.sub(&r[k + i], &t);
            }
            q[k] = m;
        }
        r.truncate(db);
        (UniPoly::new(f, q), UniPoly::new(f, r))
    }

    pub fn rem(&self, b: &UniPoly) -> UniPoly {
        self.divrem(b).1
    }

    /// Exact quotient; `NotDivisible` when the remainder is nonzero.
    pub fn div_exact(&self, b: &UniPoly) -> Result<UniPoly> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.divrem(b);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    pub fn divides(&self, o: &UniPoly) -> bool {
        !self.is_zero() && o.rem(self).is_zero()
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut r = UniPoly::one(&self.f);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &UniPoly) -> UniPoly {
        let mut r = UniPoly::one(&self.f).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mul(&r).rem(m);
            if e.bit(i) {
                r = r.mul(&base).rem(m);
            }
        }
        r
    }

    /// Makes the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.f.inv(&self.lc()).unwrap();
        self.scale(&inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s·self + t·o` and `g` monic.
    pub fn xgcd(&self, o: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let f = &self.f;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.lc()).unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &UniPoly) -> Option<UniPoly> {
        let (g, s, _) = self.xgcd(m);
        if g.deg() == 0 {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.f;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(&f.from_i64(i as i64), a))
            .collect();
        UniPoly::new(f, c)
    }

    pub fn eval(&self, a: &Elem) -> Elem {
        let f = &self.f;
        let mut r = f.zero();
        for c in self.c.iter().rev() {
            r = f.add(&f.mul(&r, a), c);
        }
        r
    }

    /// `self(g)`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut r = UniPoly::zero(&self.f);
        for c in self.c.iter().rev() {
            r = r.mul(g).add(&UniPoly::constant(&self.f, c.clone()));
        }
        r
    }

    /// `self(t + a)`.
    pub fn taylor_shift(&self, a: &Elem) -> UniPoly {
        let g = UniPoly::new(&self.f, vec![a.clone(), self.f.one()]);
        self.compose(&g)
    }

    /// `t^d·self(1/t)` for `d ≥ deg`.
    pub fn reverse(&self, d: usize) -> UniPoly {
        let mut c = self.c.clone();
        c.resize(d + 1, self.f.zero());
        c.reverse();
        UniPoly::new(&self.f, c)
    }

    /// Inverse power series modulo `t^n`; needs a nonzero constant term.
    pub fn inv_series(&self, n: usize) -> Result<UniPoly> {
        let f = &self.f;
        let c0 = self.coeff(0);
        let i0 = f.inv(&c0)?;
        let mut g = UniPoly::constant(f, i0);
        let mut prec = 1;
        let two = UniPoly::constant(f, f.from_i64(2));
        while prec < n {
            prec = (2 * prec).min(n);
            let e = self.mul_trunc(&g, prec);
            g = g.mul_trunc(&two.sub(&e), prec);
        }
        Ok(g.truncate(n))
    }

    /// Image of the polynomial in another field containing this one.
    pub fn embed(&self, to: &FieldCtx) -> UniPoly {
        UniPoly::new(to, self.c.iter().map(|a| to.embed_from(&self.f, a)).collect())
    }

    /// Applies a coefficient map into another field.
    pub fn map(&self, to: &FieldCtx, g: impl Fn(&Elem) -> Elem) -> UniPoly {
        UniPoly::new(to, self.c.iter().map(g).collect())
    }

    /// Normalization making the lowest nonzero coefficient 1.
    pub fn normalize_low(&self) -> UniPoly {
        match self.val() {
            None => self.clone(),
            Some(v) => {
                let inv = self.f.inv(&self.c[v]).unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Comparison from the leading coefficient downward, shorter first.
    pub fn cmp_lex(&self, o: &UniPoly) -> std::cmp::Ordering {
        self.c
            .len()
            .cmp(&o.c.len())
            .then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }

    /// Rendering in the given variable, highest degree first.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.f;
        let mut s = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if f.is_zero(a) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = f.fmt_elem(a);
            let term = if i == 0 {
                cs
            } else if f.is_one(a) {
                mono
            } else if f.is_one(&f.neg(a)) {
                format!("-{mono}")
            } else if f.is_atomic(a) || (cs.starts_with('-') && f.is_atomic(&f.neg(a))) {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            if !s.is_empty() && !term.starts_with('-') {
                s.push('+');
            }
            s.push_str(&term);
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}
