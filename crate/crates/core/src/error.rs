use thiserror::Error;

use crate::arith::Rational;

/// Errors raised by the exact engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A rational function was evaluated at one of its poles. For series
    /// coefficients this signals an exceptional weight.
    #[error("pole at h0 = {h0}{}", context_suffix(.context))]
    Pole { h0: Rational, context: String },

    /// Zero denominators and other structurally invalid values.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("weight mismatch: expected {expected}, got {got}")]
    WeightMismatch { expected: String, got: String },

    /// Truncated series of different orders were combined.
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// The requested leading exponent admits no formal solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// The first-kind expansion cannot be continued past `ell`.
    #[error("expansion obstructed at order {ell} (h0 = {h0}): obstruction {obstruction}")]
    Obstructed {
        ell: usize,
        h0: Rational,
        obstruction: String,
        /// obstruction / (P_{h0-1} f0 restricted), when that is nonzero
        multiple: Option<Rational>,
    },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// An internal consistency check failed.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn context_suffix(ctx: &str) -> String {
    if ctx.is_empty() {
        String::new()
    } else {
        format!(" ({ctx})")
    }
}

impl Error {
    pub fn pole(h0: Rational, context: impl Into<String>) -> Self {
        Error::Pole {
            h0,
            context: context.into(),
        }
    }

    /// Attach extra context to a pole error; other variants pass through.
    pub fn with_context(self, extra: &str) -> Self {
        match self {
            Error::Pole { h0, context } if context.is_empty() => Error::Pole {
                h0,
                context: extra.to_string(),
            },
            Error::Pole { h0, context } => Error::Pole {
                h0,
                context: format!("{extra}: {context}"),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
