//! `a`-adic expansions in `x` and euclidean division over `K[x]_(a)/(a^n)`.

use crate::error::{Error, Result};
use crate::polyring::{BiPoly, UniPoly};

/// `Q = Σ_i q_i·a^i` with `deg_x q_i < deg a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdicExpansion {
    pub modulus: UniPoly,
    pub digits: Vec<BiPoly>,
}

/// Digits of `q` in base `a`, lowest first.
fn uni_digits(q: &UniPoly, a: &UniPoly) -> Vec<UniPoly> {
    let mut out = Vec::new();
    let mut r = q.clone();
    while !r.is_zero() {
        let (qq, rr) = r.divrem(a);
        out.push(rr);
        r = qq;
    }
    out
}

/// The `a`-adic expansion of `Q`.
pub fn adic_expand(q: &BiPoly, a: &UniPoly) -> AdicExpansion {
    assert!(a.deg() >= 1, "adic modulus must be non-constant");
    let f = q.field();
    let per_y: Vec<Vec<UniPoly>> = q.y_coeffs().iter().map(|c| uni_digits(c, a)).collect();
    let n = per_y.iter().map(|d| d.len()).max().unwrap_or(0);
    let digits = (0..n)
        .map(|i| {
            BiPoly::from_y_coeffs(
                f,
                per_y
                    .iter()
                    .map(|d| d.get(i).cloned().unwrap_or_else(|| UniPoly::zero(f)))
                    .collect(),
            )
        })
        .collect();
    AdicExpansion {
        modulus: a.clone(),
        digits,
    }
}

impl AdicExpansion {
    /// `{Q}^n_m = Σ_{m ≤ i < n} q_i a^i`.
    pub fn truncate(&self, m: usize, n: usize) -> BiPoly {
        let f = self.modulus.field();
        let mut r = BiPoly::zero(f);
        let mut pw = UniPoly::one(f);
        for (i, d) in self.digits.iter().enumerate() {
            if i >= n {
                break;
            }
            if i >= m {
                r = r.add(&d.mul_x_poly(&pw));
            }
            pw = pw.mul(&self.modulus);
        }
        r
    }

    /// `Σ q_i a^i`.
    pub fn reassemble(&self) -> BiPoly {
        self.truncate(0, self.digits.len())
    }

    /// `{Q}^n_m / a^m = Σ_{m ≤ i < n} q_i a^{i-m}`.
    pub fn truncate_shifted(&self, m: usize, n: usize) -> BiPoly {
        let f = self.modulus.field();
        let mut r = BiPoly::zero(f);
        let mut pw = UniPoly::one(f);
        for (i, d) in self.digits.iter().enumerate().skip(m) {
            if i >= n {
                break;
            }
            r = r.add(&d.mul_x_poly(&pw));
            pw = pw.mul(&self.modulus);
        }
        r
    }
}

/// `(Q, R)` with `D ≡ Q·F + R mod a^n` and `deg_y R < deg_y F`, coefficients
/// reduced modulo `a^n`.
pub fn series_divrem(d: &BiPoly, fpoly: &BiPoly, a: &UniPoly, n: usize) -> Result<(BiPoly, BiPoly)> {
    let f = d.field();
    let an = a.pow(n as u64);
    let lc = fpoly.lc_y();
    if lc.gcd(a).deg() != 0 {
        return Err(Error::LeadingCoeffNotUnit);
    }
    let inv = lc.inv_mod(&an).ok_or(Error::LeadingCoeffNotUnit)?;
    let df = fpoly.deg_y();
    let red = |p: &BiPoly| -> BiPoly {
        BiPoly::from_y_coeffs(f, p.y_coeffs().iter().map(|c| c.rem(&an)).collect())
    };
    let fr = red(fpoly);
    let mut r = red(d);
    let mut q = BiPoly::zero(f);
    while !r.is_zero() && r.deg_y() >= df {
        let k = (r.deg_y() - df) as usize;
        let t = r.lc_y().mul(&inv).rem(&an);
        let term = BiPoly::from_x_poly(&t).shift_y(k);
        q = q.add(&term);
        let top = r.deg_y();
        r = red(&r.sub(&fr.mul(&term)));
        debug_assert!(r.deg_y() < top);
    }
    Ok((q, r))
}
