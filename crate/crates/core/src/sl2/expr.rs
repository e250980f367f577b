use super::canonical::{CanonicalForm, XExp};
use super::engine::{Engine, Generator};
use crate::arith::RationalFunction;
use crate::error::Result;
use crate::series::FormalSeries;

/// A factor of an operator product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Gen(Generator),
    /// The normal-ordered series `:S(z): = sum_k s_k x^k y^k`.
    Series(FormalSeries),
}

/// Linear combination of products of blocks; in each product the leftmost
/// block acts last.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    terms: Vec<(RationalFunction, Vec<Block>)>,
}

impl OperatorExpr {
    pub fn identity() -> Self {
        OperatorExpr {
            terms: vec![(RationalFunction::one(), vec![])],
        }
    }

    pub fn zero() -> Self {
        OperatorExpr { terms: vec![] }
    }

    pub fn block(b: Block) -> Self {
        OperatorExpr {
            terms: vec![(RationalFunction::one(), vec![b])],
        }
    }

    pub fn gen(g: Generator) -> Self {
        Self::block(Block::Gen(g))
    }

    pub fn series(s: FormalSeries) -> Self {
        Self::block(Block::Series(s))
    }

    pub fn word(gs: &[Generator]) -> Self {
        OperatorExpr {
            terms: vec![(
                RationalFunction::one(),
                gs.iter().cloned().map(Block::Gen).collect(),
            )],
        }
    }

    pub fn terms(&self) -> &[(RationalFunction, Vec<Block>)] {
        &self.terms
    }

    /// `self ∘ other`
    pub fn then(&self, other: &OperatorExpr) -> Self {
        let mut terms = Vec::new();
        for (a, pa) in &self.terms {
            for (b, pb) in &other.terms {
                let mut p = pa.clone();
                p.extend(pb.iter().cloned());
                terms.push((a * b, p));
            }
        }
        OperatorExpr { terms }
    }

    pub fn plus(&self, other: &OperatorExpr) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        OperatorExpr { terms }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        OperatorExpr {
            terms: self.terms.iter().map(|(a, p)| (a * c, p.clone())).collect(),
        }
    }

    pub fn minus(&self, other: &OperatorExpr) -> Self {
        self.plus(&other.scale(&RationalFunction::from_int(-1)))
    }

    /// Apply to `f`, keeping series terms through `z^order` and returning
    /// the result truncated to x-degree below `order`.
    pub fn apply(&self, engine: &Engine, f: &CanonicalForm, order: usize) -> Result<CanonicalForm> {
        let mut out = CanonicalForm::zero();
        for (c, product) in &self.terms {
            let c = engine.spec(c)?;
            if c.is_zero() {
                continue;
            }
            let mut acc = f.clone();
            for b in product.iter().rev() {
                acc = apply_block(engine, b, &acc, order)?;
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &c);
        }
        Ok(out.truncate(order as i64))
    }
}

fn apply_block(
    engine: &Engine,
    b: &Block,
    f: &CanonicalForm,
    order: usize,
) -> Result<CanonicalForm> {
    match b {
        Block::Gen(g) => Ok(engine.apply(g, f)),
        Block::Series(s) => apply_series(engine, s, f, order),
    }
}

/// `sum_{k <= order} s_k x^k y^k f`.
pub fn apply_series(
    engine: &Engine,
    s: &FormalSeries,
    f: &CanonicalForm,
    order: usize,
) -> Result<CanonicalForm> {
    let top = s.order().min(order);
    let mut out = CanonicalForm::zero();
    let mut yk = f.clone();
    for k in 0..=top {
        if k > 0 {
            yk = engine.apply_y(&yk);
        }
        let c = engine
            .spec(&s.coeff(k))
            .map_err(|e| e.with_context(&format!("series coefficient z^{k}")))?;
        if c.is_zero() {
            continue;
        }
        out.add_scaled(&engine.mul_x(&yk, XExp::int(k as i64)), &c);
    }
    Ok(out)
}
