use std::collections::BTreeMap;

use num_traits::One;

use super::{f_polynomial, g_series, h_series, k_series, FormalSeries};
use crate::arith::{factorial, int, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::sl2::{Generator, OperatorExpr, XExp};
use crate::WeightParam;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SolutionKind {
    First,
    Second,
    Log,
    LogDensity,
}

impl SolutionKind {
    pub fn name(&self) -> &'static str {
        match self {
            SolutionKind::First => "first",
            SolutionKind::Second => "second",
            SolutionKind::Log => "log",
            SolutionKind::LogDensity => "logdensity",
        }
    }
}

/// How `log tau` is ordered against `y^{h0-1}` in the log operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogOrdering {
    /// `(log tau y^m + y^m log tau)/2`
    Weyl,
    /// `log tau y^m`
    Unaveraged,
}

/// Named series blocks and constants of a solution operator.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionOperatorSpec {
    pub kind: SolutionKind,
    pub h0: WeightParam,
    pub order: usize,
    /// Keys among `K`, `G`, `F`, `H`.
    pub blocks: BTreeMap<String, FormalSeries>,
    /// `1/((h0-1)!(h0-2)!)` for log operators with `h0 >= 2`.
    pub constant: Option<Rational>,
    /// `c` in `fbar0 = c y^{h0-1} f0`.
    pub log_coefficient: Option<Rational>,
}

pub fn assemble_first_operator(h0: &WeightParam, order: usize) -> Result<SolutionOperatorSpec> {
    let mut blocks = BTreeMap::new();
    blocks.insert("K".to_string(), k_series(h0, order)?);
    Ok(SolutionOperatorSpec {
        kind: SolutionKind::First,
        h0: h0.clone(),
        order,
        blocks,
        constant: None,
        log_coefficient: None,
    })
}

pub fn assemble_second_operator(h0: &WeightParam, order: usize) -> Result<SolutionOperatorSpec> {
    let mut blocks = BTreeMap::new();
    blocks.insert("G".to_string(), g_series(h0, order)?);
    Ok(SolutionOperatorSpec {
        kind: SolutionKind::Second,
        h0: h0.clone(),
        order,
        blocks,
        constant: None,
        log_coefficient: None,
    })
}

/// Blocks of the log solution operator at integer `h0 >= 1`.
pub fn assemble_log_operator(h0: i64, order: usize) -> Result<SolutionOperatorSpec> {
    if h0 < 1 {
        return Err(Error::Domain(format!(
            "the log operator needs an integer h0 >= 1, got {h0}"
        )));
    }
    let w = WeightParam::Value(int(h0));
    let mut blocks = BTreeMap::new();
    blocks.insert("G".to_string(), g_series(&w, order)?);
    blocks.insert("H".to_string(), h_series(&w, order)?);
    let (constant, log_coefficient) = if h0 >= 2 {
        blocks.insert("F".to_string(), f_polynomial(&int(h0))?);
        let c = (factorial(h0 as u64 - 1) * factorial(h0 as u64 - 2)).recip();
        (Some(c.clone()), Some(-c))
    } else {
        (None, None)
    };
    Ok(SolutionOperatorSpec {
        kind: SolutionKind::Log,
        h0: w,
        order,
        blocks,
        constant,
        log_coefficient,
    })
}

/// The log operator with `h0` set to the bulk dimension `d`.
pub fn assemble_log_density_operator(d: i64, order: usize) -> Result<SolutionOperatorSpec> {
    let mut spec = assemble_log_operator(d, order)?;
    spec.kind = SolutionKind::LogDensity;
    Ok(spec)
}

fn shifted(s: &FormalSeries, by: usize) -> FormalSeries {
    let mut c = vec![RationalFunction::zero(); by];
    c.extend(s.coeffs().iter().cloned());
    FormalSeries::new(c, s.order() + by)
}

impl SolutionOperatorSpec {
    pub fn block(&self, name: &str) -> Result<&FormalSeries> {
        self.blocks
            .get(name)
            .ok_or_else(|| Error::Internal(format!("missing block {name}")))
    }

    /// Integer weight of a log operator.
    pub fn integer_h0(&self) -> Result<i64> {
        self.h0
            .value()
            .and_then(crate::arith::to_i64)
            .ok_or_else(|| Error::Domain("operator needs an integer h0".into()))
    }

    /// The operator as a combination of generator words and series blocks.
    pub fn to_operator(&self, ordering: LogOrdering) -> Result<OperatorExpr> {
        match self.kind {
            SolutionKind::First => Ok(OperatorExpr::series(self.block("K")?.clone())),
            SolutionKind::Second => {
                let xp = Generator::XPow(XExp::shifted(0));
                Ok(OperatorExpr::gen(xp).then(&OperatorExpr::series(self.block("G")?.clone())))
            }
            SolutionKind::Log | SolutionKind::LogDensity => self.log_operator(ordering),
        }
    }

    fn log_operator(&self, ordering: LogOrdering) -> Result<OperatorExpr> {
        let h0 = self.integer_h0()?;
        let m = (h0 - 1) as u32;
        let g = OperatorExpr::series(self.block("G")?.clone());
        let zh = OperatorExpr::series(shifted(self.block("H")?, h0 as usize));
        let xm = OperatorExpr::gen(Generator::XPow(XExp::int(m as i64)));
        let ym = OperatorExpr::word(&vec![Generator::Y; m as usize]);
        let logx = OperatorExpr::gen(Generator::LogX);
        let tau_block = match ordering {
            LogOrdering::Weyl => OperatorExpr::gen(Generator::Weyl(m)),
            LogOrdering::Unaveraged => OperatorExpr::gen(Generator::LogTau).then(&ym),
        };
        // x^m log x :G: y^m - x^m :G: (log tau y^m)
        let log_part = xm
            .then(&logx)
            .then(&g)
            .then(&ym)
            .minus(&xm.then(&g).then(&tau_block));
        if h0 == 1 {
            // log x :G: - :G: log tau + :z H:
            return Ok(log_part.plus(&zh));
        }
        let c = RationalFunction::constant(self.constant.clone().unwrap_or_else(Rational::one));
        let f = OperatorExpr::series(self.block("F")?.clone());
        Ok(f.minus(&zh.scale(&c)).minus(&log_part.scale(&c)))
    }
}
