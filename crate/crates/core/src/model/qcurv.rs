use num_traits::Zero;

use super::field::{BoundaryField, DensityField};
use super::halfspace::HalfSpace;
use crate::arith::{double_factorial, Rational};
use crate::error::{Error, Result};

/// Holographic Q-curvature of the boundary metric `e^{-2 omega} delta`:
/// `y^n (L + omega)|_bdy / ((n-1)!!)^2` with `L` the log of the flat
/// scale. `omega` is any extension; its `r` dependence drops out.
#[derive(Debug, Clone, PartialEq)]
pub struct QCurvature {
    pub n: usize,
    pub value: BoundaryField,
    /// `n` even; for odd `n` the same formula is computed but is not the
    /// critical Q-curvature.
    pub critical: bool,
}

pub fn q_holographic(omega: &DensityField, n: usize) -> Result<BoundaryField> {
    let q = q_generalized_in(&HalfSpace::new(n as i64 + 1), omega)?;
    if !q.critical {
        return Err(Error::Domain(format!(
            "Q-curvature needs an even boundary dimension, got n = {n}"
        )));
    }
    Ok(q.value)
}

/// The same construction in any dimension, flagged by parity.
pub fn q_generalized_in(model: &HalfSpace, omega: &DensityField) -> Result<QCurvature> {
    let n = model.n();
    if omega.n != n {
        return Err(Error::Domain(format!(
            "omega lives on R^{} but the model boundary is R^{n}",
            omega.n
        )));
    }
    if omega.has_log_scale() || omega.has_logr() {
        return Err(Error::Domain("omega must be a polynomial field".into()));
    }
    let u = DensityField::log_scale(n).add(&omega.clone().with_weight(Rational::zero()));
    let top = model.y_pow(n, &u);
    let c = double_factorial(n as i64 - 1);
    let value = top.restrict()?.scale(&(&c * &c).recip());
    Ok(QCurvature {
        n,
        value,
        critical: n % 2 == 0,
    })
}
