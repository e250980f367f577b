//! Truncated power series in `z` with rational-function coefficients, and
//! the series blocks of the solution operators.

mod blocks;
mod ode;
mod operators;

pub use blocks::{f_polynomial, g_series, h_series, h_series_closed_form, k_series};
pub use ode::{inhom_residual, ode_residual, OdeKind};
pub use operators::{
    assemble_first_operator, assemble_log_density_operator, assemble_log_operator,
    assemble_second_operator, LogOrdering, SolutionKind, SolutionOperatorSpec,
};

use crate::arith::{Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::WeightParam;

/// Power series known through `z^order`. Coefficients past the stored ones
/// are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<RationalFunction>,
    order: usize,
}

impl FormalSeries {
    /// Series known through `z^order`; extra coefficients are dropped.
    pub fn new(mut coeffs: Vec<RationalFunction>, order: usize) -> Self {
        coeffs.resize(order + 1, RationalFunction::zero());
        FormalSeries { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![], order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![RationalFunction::one()], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RationalFunction {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            self.order,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            self.order,
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order;
        let mut out = vec![RationalFunction::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::new(out, n))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.order)
    }

    /// Euler operator `E = z d/dz`.
    pub fn euler(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a.scale(&crate::arith::int(k as i64)))
                .collect(),
            self.order,
        )
    }

    /// `d/dz`, known through one order less.
    pub fn derivative(&self) -> Self {
        let n = self.order.saturating_sub(1);
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.scale(&crate::arith::int(k as i64)))
                .collect(),
            n,
        )
    }

    /// Multiplication by `z`, known through one order more.
    pub fn mul_z(&self) -> Self {
        let mut c = vec![RationalFunction::zero()];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c, self.order + 1)
    }

    /// Same coefficients, known to a different order (padding with zeros
    /// is only meaningful for polynomials).
    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    /// Substitute a value for `h0` in every coefficient.
    pub fn specialize(&self, h0: &WeightParam) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(
                h0.specialize(c)
                    .map_err(|e| e.with_context(&format!("coefficient z^{k}")))?,
            );
        }
        Ok(Self::new(out, self.order))
    }

    /// Substitute `h0 -> 2 - h0`.
    pub fn dual_weight(&self) -> Self {
        let (a, b) = (crate::arith::int(-1), crate::arith::int(2));
        Self::new(
            self.coeffs.iter().map(|c| c.compose_affine(&a, &b)).collect(),
            self.order,
        )
    }

    /// Coefficients as rationals; fails on any remaining `h0` dependence.
    pub fn constant_coeffs(&self) -> Result<Vec<Rational>> {
        self.coeffs
            .iter()
            .map(|c| {
                c.as_constant()
                    .ok_or_else(|| Error::Domain(format!("coefficient {c} depends on h0")))
            })
            .collect()
    }
}

/// Divide, turning a vanishing specialized denominator into a pole error
/// at the weight `h0`.
pub(crate) fn checked_div(
    num: &RationalFunction,
    den: &RationalFunction,
    h0: &WeightParam,
    context: &str,
) -> Result<RationalFunction> {
    if den.is_zero() {
        let at = h0.value().cloned().unwrap_or_else(|| crate::arith::int(0));
        return Err(Error::pole(at, context));
    }
    num.div(den)
}
