use num_traits::{One, Zero};

use super::{checked_div, FormalSeries};
use crate::arith::{factorial, int, Pochhammer, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::WeightParam;

/// `K(z) = sum a_k z^k` with `a_0 = 1` and `k(k-h0+1) a_k + a_{k-1} = 0`.
pub fn k_series(h0: &WeightParam, order: usize) -> Result<FormalSeries> {
    let h = h0.as_ratfunc();
    let mut out = vec![RationalFunction::one()];
    for k in 1..=order {
        let kk = RationalFunction::from_int(k as i64);
        let den = &kk * &(&kk - &h + RationalFunction::one());
        let prev = -&out[k - 1];
        out.push(checked_div(&prev, &den, h0, &format!("K series coefficient {k}"))?);
    }
    Ok(FormalSeries::new(out, order))
}

/// `G(z) = K(z)` at the dual weight `2 - h0`:
/// `k(k+h0-1) b_k + b_{k-1} = 0`, `b_0 = 1`.
pub fn g_series(h0: &WeightParam, order: usize) -> Result<FormalSeries> {
    let h = h0.as_ratfunc();
    let mut out = vec![RationalFunction::one()];
    for k in 1..=order {
        let kk = RationalFunction::from_int(k as i64);
        let den = &kk * &(&kk + &h - RationalFunction::one());
        let prev = -&out[k - 1];
        out.push(checked_div(&prev, &den, h0, &format!("G series coefficient {k}"))?);
    }
    Ok(FormalSeries::new(out, order))
}

fn integer_weight(h0: &Rational, min: i64, what: &str) -> Result<i64> {
    match crate::arith::to_i64(h0) {
        Some(v) if v >= min => Ok(v),
        _ => Err(Error::Domain(format!(
            "{what} requires an integer h0 >= {min}, got {h0}"
        ))),
    }
}

/// The degree `h0-2` partial sum of the K recursion, exact (not truncated).
pub fn f_polynomial(h0: &Rational) -> Result<FormalSeries> {
    let h = integer_weight(h0, 2, "the F polynomial")?;
    let deg = (h - 2) as usize;
    let mut out = vec![Rational::one()];
    for k in 1..=deg {
        let kk = int(k as i64);
        let den = &kk * (&kk - h0 + Rational::one());
        out.push(-&out[k - 1] / den);
    }
    Ok(FormalSeries::new(
        out.into_iter().map(RationalFunction::constant).collect(),
        deg,
    ))
}

/// The series `H(z)` solving the inhomogeneous equation
/// `(E(E+h0-1)+z)[zH] = -(2E+h0-1)[G-1]`, via
/// `g_0 = (h0+1)/h0^2`,
/// `g_k = -[g_{k-1} + (-1)^{k+1}(h0+2k+1)/((k+1)! (h0+k)_{k+1})] / ((k+1)(h0+k))`.
pub fn h_series(h0: &WeightParam, order: usize) -> Result<FormalSeries> {
    let h = h0.as_ratfunc();
    let hsq = &h * &h;
    let mut out = vec![checked_div(&h0_plus(&h, 1), &hsq, h0, "H series coefficient 0")?];
    for k in 1..=order {
        let ki = k as i64;
        let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
        let num = h0_plus(&h, 2 * ki + 1).scale(&int(sign));
        let den = h0_plus(&h, ki)
            .pochhammer(k + 1)
            .scale(&factorial(k as u64 + 1));
        let src = checked_div(&num, &den, h0, &format!("H series coefficient {k}"))?;
        let bracket = &out[k - 1] + &src;
        let outer = h0_plus(&h, ki).scale(&int(ki + 1));
        out.push(-checked_div(&bracket, &outer, h0, &format!("H series coefficient {k}"))?);
    }
    Ok(FormalSeries::new(out, order))
}

fn h0_plus(h: &RationalFunction, c: i64) -> RationalFunction {
    h + &RationalFunction::from_int(c)
}

/// Closed form of the `H(z)` coefficients at integer `h0 >= 1`:
/// `(-1)^k (h0 S_k + h0 + 1)(h0-1)! / (h0 (h0+k)! (k+1)!)` with
/// `S_k = sum_{j<k} (h0+2j+3)/((j+2)(h0+j+1))`.
pub fn h_series_closed_form(h0: &Rational, k: usize) -> Result<Rational> {
    let h = integer_weight(h0, 1, "the closed form")?;
    let hq = int(h);
    let mut s = Rational::zero();
    for j in 0..k as i64 {
        s += int(h + 2 * j + 3) / (int(j + 2) * int(h + j + 1));
    }
    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
    let top = sign * (&hq * s + &hq + int(1)) * factorial((h - 1) as u64);
    let bottom = hq * factorial((h + k as i64) as u64) * factorial(k as u64 + 1);
    Ok(top / bottom)
}
