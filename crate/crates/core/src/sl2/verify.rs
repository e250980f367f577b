//! Zero checks for operator identities, at generic or specialized weight.

use super::canonical::{CanonicalForm, TermKey};
use super::engine::{Engine, Generator};
use super::expr::OperatorExpr;
use crate::arith::{factorial, int, RationalFunction};
use crate::error::{Error, Result};
use crate::series::{assemble_log_operator, g_series, k_series, FormalSeries, LogOrdering};
use crate::WeightParam;

/// Outcome of reducing an expression that is expected to vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    pub claim: String,
    pub weight: WeightParam,
    pub order: usize,
    pub residue: CanonicalForm,
}

impl ZeroReport {
    pub fn vanishes(&self) -> bool {
        self.residue.is_zero()
    }

    /// Lowest x-degree surviving term.
    pub fn first_offending(&self) -> Option<(TermKey, RationalFunction)> {
        self.residue
            .leading_term()
            .map(|(k, c)| (k.clone(), c.clone()))
    }
}

/// Reduce `expr` applied to `target` and keep x-degrees below `order`.
pub fn verify_zero(
    engine: &Engine,
    expr: &OperatorExpr,
    target: &CanonicalForm,
    order: usize,
) -> Result<CanonicalForm> {
    expr.apply(engine, target, order)
}

/// Identities checked by [`check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// `y :K: f0 = 0`, `h f0 = h0 f0`.
    YAfterK,
    /// `:K: x f1 = 0`, `h f1 = (h0-2) f1`.
    KAfterX,
    /// `y O f0 = 0` (`h0 >= 2`), or `y Obar fbar0 = 0` at `h0 = 1`.
    YAfterLog,
    /// `O x f1 = 0`, and its `h0 = 1` analogue.
    LogAfterX,
    /// `y` also annihilates the unaveraged operator.
    YAfterUnaveraged,
    /// The unaveraged operator leaves `x :z^{h0-2} G: f1 / ((h0-2)!)^2`
    /// on `x f1`; the residue is the difference from that term.
    UnaveragedLeftover,
    /// `O f0` is unchanged by `log tau -> log tau + x t1`.
    LogTauShift,
    /// The registered Weyl commutator rule agrees with expanding the block.
    WeylRule,
}

impl Claim {
    pub const ALL: [Claim; 8] = [
        Claim::YAfterK,
        Claim::KAfterX,
        Claim::YAfterLog,
        Claim::LogAfterX,
        Claim::YAfterUnaveraged,
        Claim::UnaveragedLeftover,
        Claim::LogTauShift,
        Claim::WeylRule,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Claim::YAfterK => "y_after_K",
            Claim::KAfterX => "K_after_x",
            Claim::YAfterLog => "y_after_O",
            Claim::LogAfterX => "O_after_x",
            Claim::YAfterUnaveraged => "y_after_unaveraged_O",
            Claim::UnaveragedLeftover => "unaveraged_O_after_x_leftover",
            Claim::LogTauShift => "logtau_shift_invariance",
            Claim::WeylRule => "weyl_rule_agreement",
        }
    }

    /// Whether the claim needs an integer weight.
    pub fn needs_integer_weight(&self) -> bool {
        !matches!(self, Claim::YAfterK | Claim::KAfterX)
    }
}

fn h0_int(w: &WeightParam, min: i64) -> Result<i64> {
    match w.value().and_then(crate::arith::to_i64) {
        Some(h) if h >= min => Ok(h),
        _ => Err(Error::Domain(format!("claim needs an integer h0 >= {min}, got {w}"))),
    }
}

/// Data section of the log problem: `f0` of weight `h0`, or `fbar0` of
/// weight 1 when `h0 = 1`.
fn log_data(engine: &Engine, h0: i64) -> Result<CanonicalForm> {
    let label = if h0 == 1 { "fbar0" } else { "f0" };
    Ok(CanonicalForm::section(
        engine.section(label, &RationalFunction::h0())?,
    ))
}

fn x_f1(engine: &Engine) -> Result<CanonicalForm> {
    let f1 = engine.section("f1", &RationalFunction::h0_plus(-2))?;
    Ok(engine.apply(&Generator::X, &CanonicalForm::section(f1)))
}

/// Reduce the claim at one weight; the claim holds iff the residue is zero.
pub fn check(claim: Claim, weight: &WeightParam, order: usize) -> Result<ZeroReport> {
    let engine = Engine::new(weight.clone());
    let y = OperatorExpr::gen(Generator::Y);
    let residue = match claim {
        Claim::YAfterK => {
            let k = OperatorExpr::series(k_series(weight, order + 1)?);
            let f0 = CanonicalForm::section(engine.section("f0", &RationalFunction::h0())?);
            verify_zero(&engine, &y.then(&k), &f0, order)?
        }
        Claim::KAfterX => {
            let k = OperatorExpr::series(k_series(weight, order + 1)?);
            verify_zero(&engine, &k, &x_f1(&engine)?, order)?
        }
        Claim::YAfterLog | Claim::YAfterUnaveraged => {
            let h0 = h0_int(weight, 1)?;
            let ordering = if claim == Claim::YAfterLog {
                LogOrdering::Weyl
            } else {
                LogOrdering::Unaveraged
            };
            let o = assemble_log_operator(h0, order + 1)?.to_operator(ordering)?;
            verify_zero(&engine, &y.then(&o), &log_data(&engine, h0)?, order)?
        }
        Claim::LogAfterX => {
            let h0 = h0_int(weight, 1)?;
            let o = assemble_log_operator(h0, order + 1)?.to_operator(LogOrdering::Weyl)?;
            verify_zero(&engine, &o, &x_f1(&engine)?, order)?
        }
        Claim::UnaveragedLeftover => {
            let h0 = h0_int(weight, 2)?;
            let (got, expected) = unaveraged_leftover(&engine, h0, order)?;
            got.sub(&expected)
        }
        Claim::LogTauShift => {
            let h0 = h0_int(weight, 1)?;
            let o = assemble_log_operator(h0, order + 1)?.to_operator(LogOrdering::Weyl)?;
            let data = log_data(&engine, h0)?;
            let plain = verify_zero(&engine, &o, &data, order)?;
            let shifted_engine = engine
                .clone()
                .with_logtau_shift("t1", RationalFunction::from_int(-2));
            let shifted = verify_zero(&shifted_engine, &o, &data, order)?;
            shifted.sub(&plain)
        }
        Claim::WeylRule => {
            let h0 = h0_int(weight, 1)?;
            let w = OperatorExpr::gen(Generator::Weyl((h0 - 1) as u32));
            let target = x_f1(&engine)?;
            let expanded = verify_zero(&engine, &w, &target, order)?;
            let ruled = verify_zero(&engine.clone().with_weyl_rule(true), &w, &target, order)?;
            ruled.sub(&expanded)
        }
    };
    Ok(ZeroReport {
        claim: claim.name().to_string(),
        weight: weight.clone(),
        order,
        residue,
    })
}

/// `(O_unaveraged x f1, x :z^{h0-2} G: f1/((h0-2)!)^2)`, both truncated.
pub fn unaveraged_leftover(
    engine: &Engine,
    h0: i64,
    order: usize,
) -> Result<(CanonicalForm, CanonicalForm)> {
    let o = assemble_log_operator(h0, order + 1)?.to_operator(LogOrdering::Unaveraged)?;
    let got = verify_zero(engine, &o, &x_f1(engine)?, order)?;
    let g = g_series(&WeightParam::Value(int(h0)), order + 1)?;
    let shift = (h0 - 2) as usize;
    let mut c = vec![RationalFunction::zero(); shift];
    c.extend(g.coeffs().iter().cloned());
    let zg = FormalSeries::new(c, g.order() + shift);
    let norm = factorial(shift as u64);
    let scale = RationalFunction::constant((&norm * &norm).recip());
    let leftover = OperatorExpr::gen(Generator::X)
        .then(&OperatorExpr::series(zg))
        .scale(&scale);
    let f1 = CanonicalForm::section(engine.section("f1", &RationalFunction::h0_plus(-2))?);
    let expected = verify_zero(engine, &leftover, &f1, order)?;
    Ok((got, expected))
}
