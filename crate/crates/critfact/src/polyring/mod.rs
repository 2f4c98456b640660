//! Polynomial arithmetic: univariate and bivariate polynomials, truncated
//! series coefficients, resultants, `a`-adic expansions and the Moebius change
//! of variable `y ↦ α + 1/y`.

mod adic;
mod bi;
mod resultant;
mod trunc;
mod uni;

pub use adic::{adic_expand, series_divrem, AdicExpansion};
pub use bi::BiPoly;
pub use resultant::{
    discriminant_uni, discriminant_y, discriminant_y_trunc, resultant_uni, resultant_y,
    resultant_y_formal, resultant_y_trunc, subresultant_prs, valx_det_trunc, valx_disc, valx_resultant_trunc,
};
pub use trunc::TruncBi;
pub use uni::UniPoly;

use crate::error::{Error, Result};
use crate::fields::Elem;

/// `F = f·P` with `f ∈ K[x]` normalized (lowest coefficient 1) and `P`
/// primitive with respect to `y`.
pub fn content_primitive_y(fp: &BiPoly) -> (UniPoly, BiPoly) {
    let c = fp.content_y();
    let p = BiPoly::from_y_coeffs(
        fp.field(),
        fp.y_coeffs().iter().map(|q| q.div_exact(&c).expect("content divides")).collect(),
    );
    (c, p)
}

/// `F / gcd_y(F, ∂_y F)`.
pub fn squarefree_part_y(fp: &BiPoly) -> Result<BiPoly> {
    let p = fp.field().characteristic();
    let dy = fp.deg_y();
    if dy <= 0 {
        return Ok(fp.clone());
    }
    let fy = fp.deriv_y();
    let g = if fy.is_zero() {
        fp.primitive_part_y()
    } else {
        fp.gcd_y(&fy)
    };
    if g.deg_y() == 0 {
        return Ok(fp.clone());
    }
    if p > 0 && p as isize <= dy {
        return Err(Error::SmallCharacteristic(p));
    }
    fp.div_exact(&g)
}

/// Record of a Moebius change of variable, enough to map factors back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusRecord {
    pub alpha: Elem,
    pub degree: usize,
}

/// `y^{d_y}·F(x, α + 1/y)`; requires `F(0, α) ≠ 0`.
pub fn moebius(fp: &BiPoly, alpha: &Elem) -> Result<(BiPoly, MoebiusRecord)> {
    let f = fp.field();
    if f.is_zero(&fp.eval_y(alpha).coeff(0)) {
        return Err(Error::BadCenter);
    }
    let d = fp.deg_y().max(0) as usize;
    let g = fp.shift_y_by(alpha).reverse_y(d);
    Ok((
        g,
        MoebiusRecord {
            alpha: alpha.clone(),
            degree: d,
        },
    ))
}

impl MoebiusRecord {
    /// Maps a factor `G` of the transformed polynomial back to the factor
    /// `(y-α)^{deg G}·G(x, 1/(y-α))` of the original one, made primitive.
    pub fn undo(&self, g: &BiPoly) -> BiPoly {
        let f = g.field();
        let d = g.deg_y().max(0) as usize;
        let back = g.reverse_y(d).shift_y_by(&f.neg(&self.alpha));
        back.primitive_part_y().normalize()
    }
}
