//! Exact coefficient arithmetic: rationals, polynomials in the weight
//! symbol `h0`, and normalized rational functions of `h0`.

mod parse;
mod poly;
mod ratfunc;

pub use num_rational::BigRational as Rational;
pub use parse::{parse_constant, parse_ratfunc};
pub use poly::WeightPolynomial;
pub use ratfunc::RationalFunction;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p"` or `"p/q"` with optional sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse {
        line: 1,
        column: 1,
        message: format!("not a rational literal: {t:?}"),
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Malformed(format!("zero denominator in {t:?}")));
    }
    Ok(Rational::new(n, d))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// The value as an `i64` when it is an integer in range.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Double factorial n!! with the convention (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> Rational {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

/// Falling factorial k(k-1)...(k-l+1), equal to 1 when `l = 0`.
pub trait Pochhammer: Sized {
    fn pochhammer(&self, l: usize) -> Self;
}

impl Pochhammer for Rational {
    fn pochhammer(&self, l: usize) -> Self {
        let mut acc = Rational::one();
        for i in 0..l {
            acc *= self - int(i as i64);
        }
        acc
    }
}

impl Pochhammer for RationalFunction {
    fn pochhammer(&self, l: usize) -> Self {
        let mut acc = RationalFunction::one();
        for i in 0..l {
            acc = &acc * &(self - &RationalFunction::constant(int(i as i64)));
        }
        acc
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_conventions() {
        assert_eq!(int(7).pochhammer(0), int(1));
        assert_eq!(int(3).pochhammer(2), int(6));
        assert_eq!(int(3).pochhammer(4), int(0));
        // (m + 1 - h0)_m at m = 1 is 2 - h0
        let k = RationalFunction::constant(int(2)) - RationalFunction::h0();
        assert_eq!(k.pochhammer(1), k);
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-1/4").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rat(-2, 6).to_string(), "-1/3");
        assert_eq!(int(5).to_string(), "5");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(double_factorial(-1), int(1));
        assert_eq!(double_factorial(3), int(3));
        assert_eq!(double_factorial(5), int(15));
        assert_eq!(binomial(5, 2), int(10));
    }
}
