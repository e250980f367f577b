use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{poly::WeightPolynomial, Rational};
use crate::error::{Error, Result};

/// Quotient of two polynomials in `h0`, kept in lowest terms with a monic
/// denominator so that equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalFunction {
    num: WeightPolynomial,
    den: WeightPolynomial,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    /// Build and normalize `num/den`.
    pub fn new(num: WeightPolynomial, den: WeightPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Malformed(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(Self::reduce_parts(num, den))
    }

    fn reduce_parts(num: WeightPolynomial, den: WeightPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.degree() == Some(0) {
            let inv = den.leading().recip();
            return RationalFunction {
                num: num.scale(&inv),
                den: WeightPolynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading().recip();
        RationalFunction {
            num: n.scale(&lead),
            den: d.scale(&lead),
        }
    }

    /// Coprime parts; only the denominator's leading coefficient is fixed.
    fn monic_parts(num: WeightPolynomial, den: WeightPolynomial) -> Self {
        let lead = den.leading().recip();
        RationalFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    /// Renormalize; idempotent on already reduced values.
    pub fn reduce(&self) -> Self {
        Self::reduce_parts(self.num.clone(), self.den.clone())
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: WeightPolynomial::zero(),
            den: WeightPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction {
            num: WeightPolynomial::constant(c),
            den: WeightPolynomial::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(super::int(n))
    }

    pub fn h0() -> Self {
        Self::from_poly(WeightPolynomial::h0())
    }

    pub fn from_poly(p: WeightPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: WeightPolynomial::one(),
        }
    }

    /// `h0 + c`
    pub fn h0_plus(c: i64) -> Self {
        &Self::h0() + &Self::from_int(c)
    }

    pub fn numer(&self) -> &WeightPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &WeightPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.degree() == Some(0) && self.num.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value when independent of `h0`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.degree() == Some(0) {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Malformed("inverse of the zero rational function".into()));
        }
        Ok(Self::reduce_parts(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact value at `h0`; a vanishing denominator is a pole error.
    pub fn eval(&self, h0: &Rational) -> Result<Rational> {
        let d = self.den.eval(h0);
        if d.is_zero() {
            return Err(Error::pole(h0.clone(), ""));
        }
        Ok(self.num.eval(h0) / d)
    }

    /// Substitute `h0 -> a*h0 + b`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        Self::reduce_parts(
            self.num.compose_affine(a, b),
            self.den.compose_affine(a, b),
        )
    }

    /// `(num, den)` scaled to coprime integer coefficients with positive
    /// leading denominator coefficient.
    pub fn integer_parts(&self) -> (WeightPolynomial, WeightPolynomial) {
        let l: BigInt = self.num.denominator_lcm().lcm(&self.den.denominator_lcm());
        let lr = Rational::from_integer(l);
        let n = self.num.scale(&lr);
        let d = self.den.scale(&lr);
        let mut g = BigInt::zero();
        for c in n.coeffs().iter().chain(d.coeffs()) {
            g = g.gcd(c.numer());
        }
        if g.is_zero() || g.is_one() {
            return (n, d);
        }
        let gi = Rational::from_integer(g).recip();
        (n.scale(&gi), d.scale(&gi))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_constant() {
            return write!(f, "{c}");
        }
        let (n, d) = self.integer_parts();
        if d.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "({n})")
        } else {
            write!(f, "({n})/({d})")
        }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

fn exact_div(a: &WeightPolynomial, b: &WeightPolynomial) -> WeightPolynomial {
    if b.degree() == Some(0) {
        return a.scale(&b.leading().recip());
    }
    a.div_rem(b).0
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce_parts(&self.num + &rhs.num, self.den.clone());
        }
        // both operands are reduced with monic denominators, so only the
        // common part of the denominators can cancel
        let g = self.den.gcd(&rhs.den);
        if g.degree() == Some(0) {
            return RationalFunction {
                num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                den: &self.den * &rhs.den,
            };
        }
        let d1 = exact_div(&self.den, &g);
        let d2 = exact_div(&rhs.den, &g);
        let t = &(&self.num * &d2) + &(&rhs.num * &d1);
        if t.is_zero() {
            return RationalFunction::zero();
        }
        let g2 = t.gcd(&g);
        RationalFunction::monic_parts(exact_div(&t, &g2), &d1 * &exact_div(&rhs.den, &g2))
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        RationalFunction::monic_parts(
            &exact_div(&self.num, &g1) * &exact_div(&rhs.num, &g2),
            &exact_div(&self.den, &g2) * &exact_div(&rhs.den, &g1),
        )
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Add for WeightPolynomial {
    type Output = WeightPolynomial;
    fn add(self, rhs: WeightPolynomial) -> WeightPolynomial {
        &self + &rhs
    }
}

impl Mul for WeightPolynomial {
    type Output = WeightPolynomial;
    fn mul(self, rhs: WeightPolynomial) -> WeightPolynomial {
        &self * &rhs
    }
}
