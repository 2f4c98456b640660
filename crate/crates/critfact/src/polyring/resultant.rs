//! Resultants, discriminants and subresultant sequences with respect to `y`.
//! Over finite fields they are computed by subresultants in `K[x]`, over `Q`
//! from images modulo word-sized primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fields::{is_prime, Elem, FieldCtx};
use crate::polyring::{BiPoly, UniPoly};

/// `Res_y(F, G)` with respect to the actual degrees of `F` and `G`.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> UniPoly {
    let f = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero(&f);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = false;
    if a.deg_y() < b.deg_y() {
        if a.deg_y() % 2 == 1 && b.deg_y() % 2 == 1 {
            sign = !sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg_y() == 0 {
        return b.lc_y().pow(a.deg_y() as u64);
    }
    if f.is_rationals() {
        let r = resultant_rational(&a, &b, a.deg_y() as usize, b.deg_y() as usize);
        return if sign { r.neg() } else { r };
    }
    let mut g = UniPoly::one(&f);
    let mut h = UniPoly::one(&f);
    loop {
        let da = a.deg_y();
        let db = b.deg_y();
        let delta = (da - db) as u64;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return UniPoly::zero(&f);
        }
        a = b;
        let div = g.mul(&h.pow(delta));
        b = BiPoly::from_y_coeffs(
            &f,
            r.y_coeffs().iter().map(|c| c.div_exact(&div).expect("subresultant division")).collect(),
        );
        g = a.lc_y();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division")
        };
        if b.deg_y() == 0 {
            let da = a.deg_y() as u64;
            let res = b.lc_y().pow(da).div_exact(&h.pow(da - 1)).expect("subresultant division");
            return if sign { res.neg() } else { res };
        }
    }
}

/// `Res_y(A, B)` over `Q` for formal degrees `m = deg_y A` and `k ≥ deg_y B`,
/// from its images modulo word-sized primes. The primes are collected until
/// their product exceeds twice a bound on the coefficients of the integral
/// resultant.
fn resultant_rational(a: &BiPoly, b: &BiPoly, m: usize, k: usize) -> UniPoly {
    let q = a.field();
    let (ai, la) = integral(a);
    let (bi, lb) = integral(b);
    let bits = k as f64 * norm1_bits(&ai) + m as f64 * norm1_bits(&bi) + 2.0;
    let len = m * b.deg_x().max(0) as usize + k * a.deg_x().max(0) as usize + 1;
    let mut acc = vec![BigInt::zero(); len];
    let mut modulus = BigInt::one();
    let mut p = (1u64 << 61) - 1;
    while (modulus.bits() as f64) < bits {
        while !is_prime(p) {
            p -= 2;
        }
        let fp = FieldCtx::prime(p).expect("word-sized prime");
        p -= 2;
        let ap = ai.map(&fp, |c| fp.from_rational(&as_rational(c)).expect("integral"));
        if ap.deg_y() != m as isize {
            continue;
        }
        let bp = bi.map(&fp, |c| fp.from_rational(&as_rational(c)).expect("integral"));
        let r = resultant_y_formal(&ap, &bp, k);
        let prime = fp.characteristic();
        let big_p = BigInt::from(prime);
        let minv = (&modulus % &big_p).modpow(&BigInt::from(prime - 2), &big_p);
        for (j, slot) in acc.iter_mut().enumerate() {
            let s = match r.coeff(j) {
                Elem::P(v) => BigInt::from(v),
                _ => BigInt::zero(),
            };
            let t = ((s - &*slot) * &minv).mod_floor(&big_p);
            *slot += &modulus * t;
        }
        modulus *= big_p;
    }
    let half = &modulus >> 1;
    let scale = num_traits::pow(la, k) * num_traits::pow(lb, m);
    let coeffs = acc
        .into_iter()
        .map(|c| {
            let c = if c > half { c - &modulus } else { c };
            Elem::Q(BigRational::new(c, scale.clone()))
        })
        .collect();
    UniPoly::new(q, coeffs)
}

fn as_rational(c: &Elem) -> BigRational {
    match c {
        Elem::Q(v) => v.clone(),
        _ => unreachable!("rational coefficient expected"),
    }
}

/// `L·A` with integral coefficients and the least such `L`.
fn integral(a: &BiPoly) -> (BiPoly, BigInt) {
    let mut l = BigInt::one();
    for j in 0..=a.deg_y().max(0) as usize {
        for c in a.cy(j).coeffs() {
            l = l.lcm(as_rational(c).denom());
        }
    }
    let q = a.field();
    let lq = q.from_bigint(&l);
    (a.map(q, |c| q.mul(c, &lq)), l)
}

/// `log2` of the sum of the absolute values of the coefficients.
fn norm1_bits(a: &BiPoly) -> f64 {
    let mut n = BigInt::zero();
    for j in 0..=a.deg_y().max(0) as usize {
        for c in a.cy(j).coeffs() {
            n += as_rational(c).numer().abs();
        }
    }
    (n.bits() as f64).max(1.0)
}

/// `Res_y(F, G)` where `G` is read with formal degree `n ≥ deg_y G`.
pub fn resultant_y_formal(a: &BiPoly, b: &BiPoly, n: usize) -> UniPoly {
    let r = resultant_y(a, b);
    let extra = n as isize - b.deg_y().max(0);
    if extra > 0 && !b.is_zero() {
        r.mul(&a.lc_y().pow(extra as u64))
    } else {
        r
    }
}

/// `Disc_y(F) = (-1)^{d(d-1)/2}·Res_y(F, F_y)/lc_y(F)` with `d = deg_y F`.
pub fn discriminant_y(a: &BiPoly) -> UniPoly {
    let d = a.deg_y();
    assert!(d >= 1, "discriminant needs positive degree");
    let d = d as usize;
    let fy = a.deriv_y();
    if fy.is_zero() {
        return UniPoly::zero(a.field());
    }
    let r = resultant_y_formal(a, &fy, d - 1);
    let q = r.div_exact(&a.lc_y()).expect("lc divides Res(F, F_y)");
    if (d * (d - 1) / 2) % 2 == 1 {
        q.neg()
    } else {
        q
    }
}

/// Resultant reduced modulo `x^trunc`.
pub fn resultant_y_trunc(a: &BiPoly, b: &BiPoly, trunc: usize) -> UniPoly {
    resultant_y(a, b).truncate(trunc)
}

/// Discriminant reduced modulo `x^trunc`.
pub fn discriminant_y_trunc(a: &BiPoly, trunc: usize) -> UniPoly {
    discriminant_y(a).truncate(trunc)
}

/// `x`-adic valuation of `Disc_y(F)`, `None` when it vanishes identically.
pub fn valx_disc(a: &BiPoly) -> Option<usize> {
    let d = a.deg_y();
    assert!(d >= 1, "discriminant needs positive degree");
    let fy = a.deriv_y();
    if fy.is_zero() {
        return None;
    }
    let dx = a.deg_x().max(0) as usize;
    let d = d as usize;
    // deg_x Res_y(F, F_y) ≤ d_x·(2d - 1)
    let bound = dx * (2 * d - 1) + 1;
    let v = if a.field().is_rationals() {
        resultant_rational(a, &fy, d, d - 1).val()?
    } else {
        valx_resultant_formal(a, &fy, d, d - 1, bound)?
    };
    Some(v - a.lc_y().val().expect("nonzero leading coefficient"))
}

/// `x`-adic valuation of `Res_y(A, B)` reduced modulo `x^n`, `None` when
/// the reduction vanishes.
pub fn valx_resultant_trunc(a: &BiPoly, b: &BiPoly, n: usize) -> Option<usize> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    valx_resultant_formal(a, b, a.deg_y() as usize, b.deg_y() as usize, n)
}

/// Valuation of the Sylvester determinant of `A`, `B` read with formal
/// degrees `m`, `k`, computed modulo `x^t` for increasing `t ≤ n`.
fn valx_resultant_formal(a: &BiPoly, b: &BiPoly, m: usize, k: usize, n: usize) -> Option<usize> {
    let mut t = n.min(8);
    loop {
        let size = m + k;
        let mut rows = Vec::with_capacity(size);
        for (p, deg, count) in [(a, m, k), (b, k, m)] {
            let coeffs: Vec<UniPoly> = (0..=deg).map(|j| p.cy(j).truncate(t)).collect();
            for shift in 0..count {
                let mut row = vec![UniPoly::zero(a.field()); size];
                for (j, c) in coeffs.iter().enumerate() {
                    row[shift + deg - j] = c.clone();
                }
                rows.push(row);
            }
        }
        match valx_det_trunc(rows, t) {
            Some(v) => return Some(v),
            None if t >= n => return None,
            None => t = (2 * t).min(n),
        }
    }
}

/// `x`-adic valuation of a square determinant over `K[x]/(x^t)`, `None`
/// when it vanishes there. Elimination with pivots of least valuation is
/// exact over this ring.
pub fn valx_det_trunc(mut rows: Vec<Vec<UniPoly>>, t: usize) -> Option<usize> {
    let mut total = 0;
    while !rows.is_empty() {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if let Some(v) = e.val() {
                    if best.is_none_or(|(_, _, w)| v < w) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let (r, c, w) = best?;
        total += w;
        if total >= t {
            return None;
        }
        let prow = rows.swap_remove(r);
        let uinv = prow[c].unshift(w).inv_series(t - w).expect("pivot is a unit times x^w");
        for row in rows.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let q = row[c].unshift(w).mul(&uinv).truncate(t - w);
            for (e, pe) in row.iter_mut().zip(&prow) {
                if !pe.is_zero() {
                    *e = e.sub(&q.mul(pe).truncate(t));
                }
            }
        }
        for row in rows.iter_mut() {
            row.swap_remove(c);
        }
    }
    Some(total)
}

/// Univariate resultant over the coefficient field.
pub fn resultant_uni(a: &UniPoly, b: &UniPoly) -> Elem {
    let r = resultant_y(&BiPoly::from_y_poly(a), &BiPoly::from_y_poly(b));
    r.coeff(0)
}

/// Univariate discriminant over the coefficient field.
pub fn discriminant_uni(a: &UniPoly) -> Elem {
    discriminant_y(&BiPoly::from_y_poly(a)).coeff(0)
}

/// Subresultant polynomial remainder sequence of `A` and `B` (with
/// `deg A ≥ deg B`), each entry proportional over `K(x)` to the subresultant
/// of the same degree. Starts with `A`, `B`.
pub fn subresultant_prs(a: &BiPoly, b: &BiPoly) -> Vec<BiPoly> {
    let f = a.field().clone();
    let mut out = vec![a.clone(), b.clone()];
    if b.is_zero() || b.deg_y() == 0 {
        return out;
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut g = UniPoly::one(&f);
    let mut h = UniPoly::one(&f);
    loop {
        let delta = (a.deg_y() - b.deg_y()) as u64;
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return out;
        }
        a = b;
        let div = g.mul(&h.pow(delta));
        b = BiPoly::from_y_coeffs(
            &f,
            r.y_coeffs().iter().map(|c| c.div_exact(&div).expect("subresultant division")).collect(),
        );
        out.push(b.clone());
        g = a.lc_y();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division")
        };
        if b.deg_y() == 0 {
            return out;
        }
    }
}
