use super::FormalSeries;
use crate::arith::RationalFunction;
use crate::error::{Error, Result};
use crate::WeightParam;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeKind {
    /// `E(E-h0+1) + z`, annihilating `K`.
    First,
    /// `E(E+h0-1) + z`, annihilating `G`.
    Second,
}

/// Apply `E(E+s) + z` (with `s = -(h0-1)` or `h0-1`) through the series'
/// own order.
pub fn ode_residual(series: &FormalSeries, kind: OdeKind, h0: &WeightParam) -> FormalSeries {
    let h = h0.as_ratfunc();
    let shift = match kind {
        OdeKind::First => &RationalFunction::one() - &h,
        OdeKind::Second => &h - &RationalFunction::one(),
    };
    let n = series.order();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let kk = RationalFunction::from_int(k as i64);
        let mut c = &(&kk * &(&kk + &shift)) * &series.coeff(k);
        if k > 0 {
            c = &c + &series.coeff(k - 1);
        }
        out.push(c);
    }
    FormalSeries::new(out, n)
}

/// Difference of the two sides of `(E(E+h0-1)+z)[zH] = -(2E+h0-1)[G-1]`
/// through `z^N`, `N` the order of `h`.
pub fn inhom_residual(
    h: &FormalSeries,
    g: &FormalSeries,
    h0: &WeightParam,
) -> Result<FormalSeries> {
    if h.order() != g.order() {
        return Err(Error::OrderMismatch {
            left: h.order(),
            right: g.order(),
        });
    }
    let hh = h0.as_ratfunc();
    let n = h.order();
    let zh = |j: usize| -> RationalFunction {
        if j == 0 {
            RationalFunction::zero()
        } else {
            h.coeff(j - 1)
        }
    };
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let jj = RationalFunction::from_int(j as i64);
        let mut lhs = &(&jj * &(&jj + &hh - RationalFunction::one())) * &zh(j);
        if j > 0 {
            lhs = &lhs + &zh(j - 1);
        }
        let rhs = if j == 0 {
            RationalFunction::zero()
        } else {
            let factor = &RationalFunction::from_int(2 * j as i64 - 1) + &hh;
            -&(&factor * &g.coeff(j))
        };
        out.push(&lhs - &rhs);
    }
    Ok(FormalSeries::new(out, n))
}
