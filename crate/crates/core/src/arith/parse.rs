use super::{Rational, RationalFunction};
use crate::error::Result;
use crate::lex::{Cursor, Tok};

/// Parse a rational expression in `h0`, e.g. `"h0-2"`, `"(h0+1)/h0^2"`,
/// `"-1/4"`.
pub fn parse_ratfunc(text: &str) -> Result<RationalFunction> {
    let mut cur = Cursor::new(text)?;
    if cur.at_end() {
        return Err(cur.error("empty expression"));
    }
    let v = expr(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(v)
}

fn expr(cur: &mut Cursor) -> Result<RationalFunction> {
    let mut acc = term(cur)?;
    loop {
        if cur.eat('+') {
            acc = &acc + &term(cur)?;
        } else if cur.eat('-') {
            acc = &acc - &term(cur)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(cur: &mut Cursor) -> Result<RationalFunction> {
    let mut acc = unary(cur)?;
    loop {
        if cur.eat('*') {
            acc = &acc * &unary(cur)?;
        } else if cur.eat('/') {
            let rhs = unary(cur)?;
            if rhs.is_zero() {
                return Err(cur.error_prev("division by zero"));
            }
            acc = acc.div(&rhs)?;
        } else {
            return Ok(acc);
        }
    }
}

fn unary(cur: &mut Cursor) -> Result<RationalFunction> {
    if cur.eat('-') {
        return Ok(-unary(cur)?);
    }
    if cur.eat('+') {
        return unary(cur);
    }
    let base = atom(cur)?;
    if cur.eat('^') {
        let e = cur.signed_int()?;
        let mut out = RationalFunction::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        if e < 0 {
            if base.is_zero() {
                return Err(cur.error_prev("negative power of zero"));
            }
            out = out.inv()?;
        }
        return Ok(out);
    }
    Ok(base)
}

fn atom(cur: &mut Cursor) -> Result<RationalFunction> {
    match cur.next() {
        Some(Tok::Int(n)) => Ok(RationalFunction::constant(Rational::from_integer(n))),
        Some(Tok::Ident(s)) if s == "h0" => Ok(RationalFunction::h0()),
        Some(Tok::Ident(s)) => Err(cur.error_prev(format!("unknown symbol {s:?}"))),
        Some(Tok::Sym('(')) => {
            let v = expr(cur)?;
            cur.expect(')')?;
            Ok(v)
        }
        _ => Err(cur.error_prev("expected a number, h0 or '('")),
    }
}

/// Parse a weight that must not depend on `h0`.
pub fn parse_constant(text: &str) -> Result<Rational> {
    let f = parse_ratfunc(text)?;
    f.as_constant().ok_or_else(|| crate::error::Error::Parse {
        line: 1,
        column: 1,
        message: format!("expected a rational constant, got {text:?}"),
    })
}
