//! Exact sl(2) boundary calculus for the degenerate Laplacian `I·D`.
//!
//! * [`arith`]: rationals, polynomials and rational functions in the weight
//!   symbol `h0`.
//! * [`series`]: the formal series behind the solution operators.
//! * [`sl2`]: normal ordering of words in `x, y, h, log x, log tau` acting on
//!   weighted sections.
//! * [`model`]: the flat half-space realization, with tangential operators,
//!   GJMS and Q-curvature extraction and the boundary expansion solvers.

pub mod arith;
pub mod error;
pub mod lex;
pub mod model;
pub mod series;
pub mod sl2;

pub use arith::{Rational, RationalFunction, WeightPolynomial};
pub use error::{Error, Result};

/// Weight parameter of a computation: the formal symbol `h0` or a value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WeightParam {
    Generic,
    Value(Rational),
}

impl WeightParam {
    /// Specialize a generic coefficient; a no-op for [`WeightParam::Generic`].
    pub fn specialize(&self, f: &RationalFunction) -> Result<RationalFunction> {
        match self {
            WeightParam::Generic => Ok(f.clone()),
            WeightParam::Value(v) => f.eval(v).map(RationalFunction::constant),
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            WeightParam::Generic => None,
            WeightParam::Value(v) => Some(v),
        }
    }

    pub fn as_ratfunc(&self) -> RationalFunction {
        match self {
            WeightParam::Generic => RationalFunction::h0(),
            WeightParam::Value(v) => RationalFunction::constant(v.clone()),
        }
    }
}

impl std::fmt::Display for WeightParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightParam::Generic => f.write_str("generic"),
            WeightParam::Value(v) => write!(f, "{v}"),
        }
    }
}
