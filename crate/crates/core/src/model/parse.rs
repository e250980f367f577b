//! Field expressions: rationals, `r`, `x1`..`x9`, `log(r)`, `+ - * / ^`
//! and parentheses. Division only by nonzero constants; only `r` takes
//! negative or fractional exponents (`r^(5/2)`, `r^-1`).

use num_traits::{One, Zero};

use super::field::{DensityField, FieldKey};
use crate::arith::Rational;
use crate::error::Result;
use crate::lex::{Cursor, Tok};

pub fn parse_field_expr(text: &str, n: usize, weight: Rational) -> Result<DensityField> {
    let mut cur = Cursor::new(text)?;
    if cur.at_end() {
        return Err(cur.error("empty expression"));
    }
    let p = Parser { n };
    let v = p.expr(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(v.with_weight(weight))
}

struct Parser {
    n: usize,
}

impl Parser {
    fn zero_w(&self) -> Rational {
        Rational::zero()
    }

    fn constant(&self, c: Rational) -> DensityField {
        DensityField::constant(self.n, self.zero_w(), c)
    }

    fn expr(&self, cur: &mut Cursor) -> Result<DensityField> {
        let mut acc = self.term(cur)?;
        loop {
            if cur.eat('+') {
                acc = acc.add(&self.term(cur)?);
            } else if cur.eat('-') {
                acc = acc.sub(&self.term(cur)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, cur: &mut Cursor) -> Result<DensityField> {
        let mut acc = self.unary(cur)?;
        loop {
            if cur.eat('*') {
                acc = acc.mul(&self.unary(cur)?).with_weight(self.zero_w());
            } else if cur.eat('/') {
                let d = self.unary(cur)?;
                let c = constant_value(&d)
                    .ok_or_else(|| cur.error_prev("division only by a constant"))?;
                if c.is_zero() {
                    return Err(cur.error_prev("division by zero"));
                }
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&self, cur: &mut Cursor) -> Result<DensityField> {
        if cur.eat('-') {
            return Ok(self.unary(cur)?.scale(&Rational::from_integer((-1).into())));
        }
        if cur.eat('+') {
            return self.unary(cur);
        }
        self.power(cur)
    }

    fn power(&self, cur: &mut Cursor) -> Result<DensityField> {
        let (base, is_r) = self.atom(cur)?;
        if !cur.eat('^') {
            return Ok(base);
        }
        if is_r {
            let e = r_exponent(cur)?;
            return Ok(DensityField::r_power(self.n, self.zero_w(), e));
        }
        let k = match cur.next() {
            Some(Tok::Int(k)) => u32::try_from(&k).map_err(|_| cur.error_prev("exponent too large"))?,
            _ => {
                return Err(cur.error_prev(
                    "only nonnegative integer exponents here; fractional powers only on r",
                ))
            }
        };
        let mut out = self.constant(Rational::one());
        for _ in 0..k {
            out = out.mul(&base).with_weight(self.zero_w());
        }
        Ok(out)
    }

    fn atom(&self, cur: &mut Cursor) -> Result<(DensityField, bool)> {
        match cur.next() {
            Some(Tok::Int(v)) => Ok((self.constant(Rational::from_integer(v)), false)),
            Some(Tok::Sym('(')) => {
                let v = self.expr(cur)?;
                cur.expect(')')?;
                Ok((v, false))
            }
            Some(Tok::Ident(s)) if s == "r" => Ok((
                DensityField::r_power(self.n, self.zero_w(), Rational::one()),
                true,
            )),
            Some(Tok::Ident(s)) if s == "log" => {
                cur.expect('(')?;
                match cur.next() {
                    Some(Tok::Ident(v)) if v == "r" => {}
                    _ => return Err(cur.error_prev("only log(r) is supported")),
                }
                cur.expect(')')?;
                Ok((self.constant(Rational::one()).mul_logr(), false))
            }
            Some(Tok::Ident(s)) => {
                let idx = s
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|i| (1..=self.n).contains(i))
                    .ok_or_else(|| cur.error_prev(format!("unknown variable {s:?}")))?;
                Ok((DensityField::coordinate(self.n, self.zero_w(), idx), false))
            }
            _ => Err(cur.error_prev("expected a number, variable or '('")),
        }
    }
}

/// `3`, `-1`, `(5/2)`, `(-1/2)`.
fn r_exponent(cur: &mut Cursor) -> Result<Rational> {
    let paren = cur.eat('(');
    let neg = cur.eat('-');
    let mut e = match cur.next() {
        Some(Tok::Int(v)) => Rational::from_integer(v),
        _ => return Err(cur.error_prev("expected an exponent")),
    };
    if paren && cur.eat('/') {
        match cur.next() {
            Some(Tok::Int(d)) if !d.is_zero() => e /= Rational::from_integer(d),
            _ => return Err(cur.error_prev("expected a nonzero denominator")),
        }
    }
    if paren {
        cur.expect(')')?;
    }
    Ok(if neg { -e } else { e })
}

fn constant_value(f: &DensityField) -> Option<Rational> {
    let mut it = f.terms();
    match (it.next(), it.next()) {
        (None, _) => Some(Rational::zero()),
        (Some((k, c)), None) if *k == FieldKey::constant(f.n) => Some(c.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn p(s: &str) -> DensityField {
        parse_field_expr(s, 3, Rational::zero()).unwrap()
    }

    #[test]
    fn parses_and_prints() {
        assert_eq!(p("x1^2 + 2*r^2").to_string(), "x1^2 + 2*r^2");
        assert!(p("0").is_zero());
        assert_eq!(p("(x1 + r)^2 - x1^2").to_string(), "2*r*x1 + r^2");
        assert_eq!(p("r^(5/2)").to_string(), "r^(5/2)");
        assert_eq!(p("x2*log(r)/2").to_string(), "1/2*log(r)*x2");
        assert_eq!(p("r^-1").to_string(), "r^(-1)");
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["x1^(1/2)", "x4", "x1 +", "x1/x2", "y", "log(x1)"] {
            match parse_field_expr(bad, 3, Rational::zero()) {
                Err(Error::Parse { .. }) => {}
                other => panic!("{bad}: {other:?}"),
            }
        }
    }
}
