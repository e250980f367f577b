//! Normal ordering in the algebra generated by `x, y, h, log x, log tau`
//! acting on sections of definite weight.
//!
//! Axioms: `[h,x] = 2x`, `[h,y] = -2y`, `[x,y] = h`, `[h, log x] = 2`,
//! `[y, log x] = -x^{-1}(h-1)`, `[h, log tau] = 2`, `[x, log tau] = 0`.
//! Words in `y` and `log tau` are left as they are.

mod canonical;
mod engine;
mod expr;
pub mod verify;
mod word;

pub use canonical::{normalize_tail, CanonicalForm, FormalSection, TailLetter, TermKey, XExp};
pub use engine::{Engine, Generator};
pub use expr::{apply_series, Block, OperatorExpr};
pub use verify::{check, verify_zero, Claim, ZeroReport};
pub use word::{parse_word, WordContext};

use crate::error::Result;
use crate::series::FormalSeries;

/// `:S(z):` applied to `target`, truncated to x-degree below `order`.
pub fn apply_series_operator(
    engine: &Engine,
    series: &FormalSeries,
    target: &FormalSection,
    order: usize,
) -> Result<CanonicalForm> {
    Ok(apply_series(engine, series, &CanonicalForm::section(target.clone()), order)?
        .truncate(order as i64))
}
