//! Polynomials over the truncated series ring `(K[x]/(x^n))[y]`.

use crate::error::{Error, Result};
use crate::fields::Elem;
use crate::polyring::{BiPoly, UniPoly};

/// A polynomial in `y` whose coefficients are known modulo `x^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncBi {
    n: usize,
    p: BiPoly,
}

impl TruncBi {
    /// Reduces `p` modulo `x^n`.
    pub fn new(p: &BiPoly, n: usize) -> Self {
        TruncBi {
            n,
            p: p.truncate_x(n),
        }
    }

    pub fn precision(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &BiPoly {
        &self.p
    }

    pub fn into_poly(self) -> BiPoly {
        self.p
    }

    pub fn deg_y(&self) -> isize {
        self.p.deg_y()
    }

    pub fn lc_y(&self) -> UniPoly {
        self.p.lc_y()
    }

    fn check(&self, o: &TruncBi) {
        assert_eq!(self.n, o.n, "truncated operands must share their precision");
    }

    pub fn add(&self, o: &TruncBi) -> TruncBi {
        self.check(o);
        TruncBi {
            n: self.n,
            p: self.p.add(&o.p),
        }
    }

    pub fn sub(&self, o: &TruncBi) -> TruncBi {
        self.check(o);
        TruncBi {
            n: self.n,
            p: self.p.sub(&o.p),
        }
    }

    pub fn mul(&self, o: &TruncBi) -> TruncBi {
        self.check(o);
        TruncBi {
            n: self.n,
            p: self.p.mul_trunc(&o.p, self.n),
        }
    }

    pub fn scale(&self, a: &Elem) -> TruncBi {
        TruncBi {
            n: self.n,
            p: self.p.scale(a),
        }
    }

    pub fn mul_x_poly(&self, u: &UniPoly) -> TruncBi {
        TruncBi {
            n: self.n,
            p: self.p.mul_x_poly_trunc(u, self.n),
        }
    }

    pub fn deriv_y(&self) -> TruncBi {
        TruncBi {
            n: self.n,
            p: self.p.deriv_y(),
        }
    }

    /// Lower precision.
    pub fn truncate(&self, m: usize) -> TruncBi {
        TruncBi::new(&self.p, m.min(self.n))
    }

    /// Euclidean division by `d`, whose leading coefficient must be a unit mod `x`.
    pub fn divrem(&self, d: &TruncBi) -> Result<(TruncBi, TruncBi)> {
        self.check(d);
        let n = self.n;
        let f = self.p.field().clone();
        let ld = d.lc_y();
        if f.is_zero(&ld.coeff(0)) {
            return Err(Error::LeadingCoeffNotUnit);
        }
        let inv = ld.inv_series(n)?;
        let dd = d.p.deg_y();
        let mut r = self.p.clone();
        let mut q = BiPoly::zero(&f);
        while !r.is_zero() && r.deg_y() >= dd {
            let k = (r.deg_y() - dd) as usize;
            let t = r.lc_y().mul_trunc(&inv, n);
            let term = BiPoly::from_x_poly(&t).shift_y(k);
            q = q.add(&term);
            let top = r.deg_y() as usize;
            r = r.sub(&d.p.mul_trunc(&term, n));
            // the leading term cancels exactly; drop any residue beyond precision
            if r.deg_y() >= top as isize {
                r = BiPoly::from_y_coeffs(&f, r.y_coeffs()[..top].to_vec());
            }
        }
        Ok((TruncBi { n, p: q }, TruncBi { n, p: r }))
    }

    /// Exact division; `NotDivisible` if a remainder survives.
    pub fn div_exact(&self, d: &TruncBi) -> Result<TruncBi> {
        let (q, r) = self.divrem(d)?;
        if r.p.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }
}
