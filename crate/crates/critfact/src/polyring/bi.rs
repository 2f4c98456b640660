//! Exact bivariate polynomials, stored as a dense list of `x`-polynomial
//! coefficients indexed by the power of `y`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx};
use crate::polyring::UniPoly;

/// `F = Σ_j c_j(x) y^j` with no trailing zero coefficients.
#[derive(Clone, Debug)]
pub struct BiPoly {
    f: FieldCtx,
    c: Vec<UniPoly>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl Eq for BiPoly {}

impl BiPoly {
    pub fn new(f: &FieldCtx, mut c: Vec<UniPoly>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        BiPoly { f: f.clone(), c }
    }

    pub fn zero(f: &FieldCtx) -> Self {
        BiPoly {
            f: f.clone(),
            c: Vec::new(),
        }
    }

    pub fn one(f: &FieldCtx) -> Self {
        BiPoly::constant(f, f.one())
    }

    pub fn constant(f: &FieldCtx, a: Elem) -> Self {
        BiPoly::new(f, vec![UniPoly::constant(f, a)])
    }

    pub fn x(f: &FieldCtx) -> Self {
        BiPoly::new(f, vec![UniPoly::var(f)])
    }

    pub fn y(f: &FieldCtx) -> Self {
        BiPoly::new(f, vec![UniPoly::zero(f), UniPoly::one(f)])
    }

    /// `a·x^i·y^j`.
    pub fn monomial(f: &FieldCtx, a: Elem, i: usize, j: usize) -> Self {
        let mut c = vec![UniPoly::zero(f); j];
        c.push(UniPoly::monomial(f, a, i));
        BiPoly::new(f, c)
    }

    /// Builds a polynomial from `(i, j, coefficient)` terms (summed).
    pub fn from_terms(f: &FieldCtx, terms: &[(usize, usize, Elem)]) -> Self {
        let mut r = BiPoly::zero(f);
        for (i, j, a) in terms {
            r = r.add(&BiPoly::monomial(f, a.clone(), *i, *j));
        }
        r
    }

    /// Integer terms `(i, j, c)` mapped into the field.
    pub fn from_int_terms(f: &FieldCtx, terms: &[(usize, usize, i64)]) -> Self {
        let t: Vec<(usize, usize, Elem)> = terms.iter().map(|&(i, j, c)| (i, j, f.from_i64(c))).collect();
        BiPoly::from_terms(f, &t)
    }

    /// A polynomial in `y` alone.
    pub fn from_y_poly(p: &UniPoly) -> Self {
        let f = p.field();
        BiPoly::new(f, p.coeffs().iter().map(|a| UniPoly::constant(f, a.clone())).collect())
    }

    /// A polynomial in `x` alone.
    pub fn from_x_poly(p: &UniPoly) -> Self {
        BiPoly::new(p.field(), vec![p.clone()])
    }

    /// Direct construction from `y`-coefficients.
    pub fn from_y_coeffs(f: &FieldCtx, c: Vec<UniPoly>) -> Self {
        BiPoly::new(f, c)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.f
    }

    /// Coefficients in `K[x]` of the powers of `y`.
    pub fn y_coeffs(&self) -> &[UniPoly] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_y(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn deg_x(&self) -> isize {
        self.c.iter().map(|p| p.deg()).max().unwrap_or(-1)
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn cy(&self, j: usize) -> UniPoly {
        self.c.get(j).cloned().unwrap_or_else(|| UniPoly::zero(&self.f))
    }

    /// Coefficient of `x^i` as a polynomial in `y`.
    pub fn cx(&self, i: usize) -> UniPoly {
        UniPoly::new(&self.f, self.c.iter().map(|p| p.coeff(i)).collect())
    }

    pub fn coeff(&self, i: usize, j: usize) -> Elem {
        self.c.get(j).map(|p| p.coeff(i)).unwrap_or_else(|| self.f.zero())
    }

    /// Leading coefficient with respect to `y`.
    pub fn lc_y(&self) -> UniPoly {
        self.c.last().cloned().unwrap_or_else(|| UniPoly::zero(&self.f))
    }

    /// Nonzero terms `(i, j, a)`.
    pub fn terms(&self) -> Vec<(usize, usize, Elem)> {
        let mut out = Vec::new();
        for (j, p) in self.c.iter().enumerate() {
            for (i, a) in p.coeffs().iter().enumerate() {
                if !self.f.is_zero(a) {
                    out.push((i, j, a.clone()));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|j| match (self.c.get(j), o.c.get(j)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            })
            .collect();
        BiPoly::new(&self.f, c)
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|j| match (self.c.get(j), o.c.get(j)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                _ => unreachable!(),
            })
            .collect();
        BiPoly::new(&self.f, c)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().map(|p| p.neg()).collect())
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        self.mul_trunc(o, usize::MAX)
    }

    /// Product with every `x`-exponent `≥ n` dropped.
    pub fn mul_trunc(&self, o: &BiPoly, n: usize) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero(&self.f);
        }
        let mut c = vec![UniPoly::zero(&self.f); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&a.mul_trunc(b, n));
            }
        }
        BiPoly::new(&self.f, c)
    }

    pub fn pow(&self, mut e: u64) -> BiPoly {
        let mut r = BiPoly::one(&self.f);
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

    pub fn pow_trunc(&self, mut e: u64, n: usize) -> BiPoly {
        let mut r = BiPoly::one(&self.f).truncate_x(n);
        let mut b = self.truncate_x(n);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_trunc(&b, n);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_trunc(&b, n);
            }
        }
        r
    }

    pub fn scale(&self, a: &Elem) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().map(|p| p.scale(a)).collect())
    }

    /// Multiplication by a polynomial in `x`.
    pub fn mul_x_poly(&self, u: &UniPoly) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().map(|p| p.mul(u)).collect())
    }

    pub fn mul_x_poly_trunc(&self, u: &UniPoly, n: usize) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().map(|p| p.mul_trunc(u, n)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift_x(&self, k: usize) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().map(|p| p.shift(k)).collect())
    }

    /// Multiplication by `y^k`.
    pub fn shift_y(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![UniPoly::zero(&self.f); k];
        c.extend(self.c.iter().cloned());
        BiPoly::new(&self.f, c)
    }

    /// Keeps the terms with `x`-exponent `< n`.
    pub fn truncate_x(&self, n: usize) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().map(|p| p.truncate(n)).collect())
    }

    /// Keeps the terms with `x`-exponent in `[lo, hi)`.
    pub fn slice_x(&self, lo: usize, hi: usize) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().map(|p| p.slice(lo, hi)).collect())
    }

    /// Drops the terms with `y`-exponent `≥ n`.
    pub fn truncate_y(&self, n: usize) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().take(n).cloned().collect())
    }

    pub fn deriv_y(&self) -> BiPoly {
        let f = &self.f;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, p)| p.scale(&f.from_i64(j as i64)))
            .collect();
        BiPoly::new(f, c)
    }

    pub fn deriv_x(&self) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().map(|p| p.derivative()).collect())
    }

    /// `F(α, y)`.
    pub fn eval_x(&self, a: &Elem) -> UniPoly {
        UniPoly::new(&self.f, self.c.iter().map(|p| p.eval(a)).collect())
    }

    /// `F(x, β)`.
    pub fn eval_y(&self, b: &Elem) -> UniPoly {
        let mut r = UniPoly::zero(&self.f);
        for p in self.c.iter().rev() {
            r = r.scale(b).add(p);
        }
        r
    }

    /// `F(x, g(x))` truncated below `x^n`.
    pub fn eval_y_series(&self, g: &UniPoly, n: usize) -> UniPoly {
        let mut r = UniPoly::zero(&self.f);
        for p in self.c.iter().rev() {
            r = r.mul_trunc(g, n).add(&p.truncate(n));
        }
        r
    }

    /// `F(x, y + α)`.
    pub fn shift_y_by(&self, a: &Elem) -> BiPoly {
        let lin = BiPoly::new(
            &self.f,
            vec![UniPoly::constant(&self.f, a.clone()), UniPoly::one(&self.f)],
        );
        let mut r = BiPoly::zero(&self.f);
        for p in self.c.iter().rev() {
            r = r.mul(&lin).add(&BiPoly::from_x_poly(p));
        }
        r
    }

    /// `F(x + α, y)`.
    pub fn shift_x_by(&self, a: &Elem) -> BiPoly {
        BiPoly::new(&self.f, self.c.iter().map(|p| p.taylor_shift(a)).collect())
    }

    /// `y^d·F(x, 1/y)` for `d ≥ deg_y`.
    pub fn reverse_y(&self, d: usize) -> BiPoly {
        let mut c = self.c.clone();
        c.resize(d + 1, UniPoly::zero(&self.f));
        c.reverse();
        BiPoly::new(&self.f, c)
    }

    /// `F(y, x)`.
    pub fn transpose(&self) -> BiPoly {
        let dx = self.deg_x();
        if dx < 0 {
            return self.clone();
        }
        BiPoly::new(&self.f, (0..=dx as usize).map(|i| self.cx(i)).collect())
    }

    /// `F(x, y)` with every coefficient mapped into a larger field.
    pub fn embed(&self, to: &FieldCtx) -> BiPoly {
        BiPoly::new(to, self.c.iter().map(|p| p.embed(to)).collect())
    }

    pub fn map(&self, to: &FieldCtx, g: impl Fn(&Elem) -> Elem) -> BiPoly {
        BiPoly::new(to, self.c.iter().map(|p| p.map(to, &g)).collect())
    }

    /// Exact division in `K[x][y]`.
    pub fn div_exact(&self, g: &BiPoly) -> Result<BiPoly> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = g.c.len() - 1;
        let lg = g.lc_y();
        let mut r = self.clone();
        let mut q = vec![UniPoly::zero(&self.f); (r.c.len() + 1).saturating_sub(dg + 1).max(1)];
        while !r.is_zero() {
            let dr = r.c.len() - 1;
            if dr < dg {
                return Err(Error::NotDivisible);
            }
            let t = r.lc_y().div_exact(&lg)?;
            let k = dr - dg;
            r = r.sub(&g.mul_x_poly(&t).shift_y(k));
            q[k] = t;
        }
        Ok(BiPoly::new(&self.f, q))
    }

    /// `lc(g)^(δ+1)·self = Q·g + R` with `δ = deg self − deg g`; returns `R`.
    pub fn pseudo_rem(&self, g: &BiPoly) -> BiPoly {
        let dg = g.deg_y();
        let lg = g.lc_y();
        let mut r = self.clone();
        if r.deg_y() < dg {
            return r;
        }
        let mut e = r.deg_y() - dg + 1;
        while !r.is_zero() && r.deg_y() >= dg {
            let k = (r.deg_y() - dg) as usize;
            let t = r.lc_y();
            r = r.mul_x_poly(&lg).sub(&g.mul_x_poly(&t).shift_y(k));
            e -= 1;
        }
        if e > 0 {
            r = r.mul_x_poly(&lg.pow(e as u64));
        }
        r
    }

    /// Content with respect to `y`, normalized with lowest coefficient 1.
    pub fn content_y(&self) -> UniPoly {
        let mut g = UniPoly::zero(&self.f);
        for p in &self.c {
            g = g.gcd(p);
            if g.is_one() {
                break;
            }
        }
        g.normalize_low()
    }

    /// Divides out the content with respect to `y`.
    pub fn primitive_part_y(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content_y();
        BiPoly::new(&self.f, self.c.iter().map(|p| p.div_exact(&g).unwrap()).collect())
    }

    /// Content with respect to `x`: the gcd in `K[y]` of the `x`-coefficients.
    pub fn content_x(&self) -> UniPoly {
        let mut g = UniPoly::zero(&self.f);
        let dx = self.deg_x();
        for i in 0..=dx.max(-1) {
            if i < 0 {
                break;
            }
            g = g.gcd(&self.cx(i as usize));
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Scales so that `lc_y` has lowest nonzero coefficient 1.
    pub fn normalize(&self) -> BiPoly {
        let l = self.lc_y();
        match l.val() {
            None => self.clone(),
            Some(v) => {
                let inv = self.f.inv(&l.coeff(v)).unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Deterministic total order: bidegree, then coefficients.
    pub fn cmp_canon(&self, o: &BiPoly) -> Ordering {
        self.deg_y()
            .cmp(&o.deg_y())
            .then_with(|| self.deg_x().cmp(&o.deg_x()))
            .then_with(|| {
                for j in (0..self.c.len()).rev() {
                    let ord = self.c[j].cmp_lex(&o.c[j]);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }

    /// Gcd in `K[x][y]` of two polynomials, returned primitive in `y`.
    pub fn gcd_y(&self, o: &BiPoly) -> BiPoly {
        let mut a = self.primitive_part_y();
        let mut b = o.primitive_part_y();
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg_y() == 0 {
                return BiPoly::one(&self.f);
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part_y();
        }
        a.normalize()
    }
}
