//! Text form of operator words: juxtaposed factors, leftmost acting last.
//!
//! Factors: `x`, `y`, `h`, `logx`, `logtau`, `x^3`, `x^(-1)`,
//! `x^(h0-1)`, `y^3`, `K[h0]`, `K[2-h0]`, `G`, `F`, `HH`, `W`, `O`,
//! `Obar`, `Ohat`. `G = K[2-h0]`, `F` is the degree `h0-2` polynomial,
//! `HH = :H(z):`, `W` the Weyl block with `m = h0-1`, `O`/`Obar` the log
//! operators and `Ohat` the unaveraged log operator.

use super::engine::Generator;
use super::expr::OperatorExpr;
use crate::arith::{parse_ratfunc, RationalFunction};
use crate::error::{Error, Result};
use crate::lex::{Cursor, Tok};
use crate::series::{
    assemble_log_operator, f_polynomial, g_series, h_series, k_series, LogOrdering,
};
use crate::WeightParam;

/// Weight and series order used to instantiate named blocks.
#[derive(Debug, Clone)]
pub struct WordContext {
    pub weight: WeightParam,
    pub order: usize,
}

pub fn parse_word(text: &str, ctx: &WordContext) -> Result<OperatorExpr> {
    let mut cur = Cursor::new(text)?;
    let mut out = OperatorExpr::identity();
    if cur.at_end() {
        return Err(cur.error("empty word"));
    }
    while !cur.at_end() {
        cur.eat('*');
        let f = factor(&mut cur, ctx)?;
        out = out.then(&f);
    }
    Ok(out)
}

fn integer_h0(ctx: &WordContext, name: &str, min: i64) -> Result<i64> {
    match ctx.weight.value().and_then(crate::arith::to_i64) {
        Some(h) if h >= min => Ok(h),
        _ => Err(Error::Domain(format!(
            "{name} needs an integer h0 >= {min}, got {}",
            ctx.weight
        ))),
    }
}

fn power(cur: &mut Cursor) -> Result<Option<RationalFunction>> {
    if !cur.eat('^') {
        return Ok(None);
    }
    if cur.peek() == Some(&Tok::Sym('(')) {
        cur.next();
        let mut depth = 1;
        let mut text = String::new();
        loop {
            match cur.next() {
                Some(Tok::Sym('(')) => {
                    depth += 1;
                    text.push('(');
                }
                Some(Tok::Sym(')')) => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                    text.push(')');
                }
                Some(Tok::Sym(c)) => text.push(c),
                Some(Tok::Int(n)) => text.push_str(&n.to_string()),
                Some(Tok::Ident(s)) => text.push_str(&s),
                None => return Err(cur.error("unclosed exponent")),
            }
            text.push(' ');
        }
        return parse_ratfunc(&text)
            .map(Some)
            .map_err(|_| cur.error_prev(format!("bad exponent {text:?}")));
    }
    let e = cur.signed_int()?;
    Ok(Some(RationalFunction::from_int(e)))
}

fn repeat(g: Generator, n: &RationalFunction, cur: &Cursor) -> Result<OperatorExpr> {
    let k = n
        .as_constant()
        .and_then(|c| crate::arith::to_i64(&c))
        .filter(|k| *k >= 0)
        .ok_or_else(|| cur.error_prev("only nonnegative integer powers allowed here"))?;
    Ok(OperatorExpr::word(&vec![g; k as usize]))
}

fn factor(cur: &mut Cursor, ctx: &WordContext) -> Result<OperatorExpr> {
    let name = match cur.next() {
        Some(Tok::Ident(s)) => s,
        _ => return Err(cur.error_prev("expected an operator name")),
    };
    let n = ctx.order;
    let w = &ctx.weight;
    match name.as_str() {
        "x" => match power(cur)? {
            None => Ok(OperatorExpr::gen(Generator::X)),
            Some(a) => Ok(OperatorExpr::gen(Generator::xpow(&a)?)),
        },
        "y" => match power(cur)? {
            None => Ok(OperatorExpr::gen(Generator::Y)),
            Some(k) => repeat(Generator::Y, &k, cur),
        },
        "h" => match power(cur)? {
            None => Ok(OperatorExpr::gen(Generator::H)),
            Some(k) => repeat(Generator::H, &k, cur),
        },
        "logx" => match power(cur)? {
            None => Ok(OperatorExpr::gen(Generator::LogX)),
            Some(k) => repeat(Generator::LogX, &k, cur),
        },
        "logtau" => Ok(OperatorExpr::gen(Generator::LogTau)),
        "K" => {
            cur.expect('[')?;
            let mut text = String::new();
            loop {
                match cur.next() {
                    Some(Tok::Sym(']')) => break,
                    Some(Tok::Sym(c)) => text.push(c),
                    Some(Tok::Int(v)) => text.push_str(&v.to_string()),
                    Some(Tok::Ident(s)) => text.push_str(&s),
                    None => return Err(cur.error("unclosed '['")),
                }
                text.push(' ');
            }
            let a = parse_ratfunc(&text)?;
            if a == RationalFunction::h0() {
                Ok(OperatorExpr::series(k_series(w, n)?))
            } else if a == &RationalFunction::from_int(2) - &RationalFunction::h0() {
                Ok(OperatorExpr::series(g_series(w, n)?))
            } else {
                Err(cur.error_prev("K[...] supports the weights h0 and 2-h0"))
            }
        }
        "G" => Ok(OperatorExpr::series(g_series(w, n)?)),
        "HH" => Ok(OperatorExpr::series(h_series(w, n)?)),
        "F" => {
            let h = integer_h0(ctx, "F", 2)?;
            let f = f_polynomial(&crate::arith::int(h))?;
            Ok(OperatorExpr::series(f.with_order(n.max(f.order()))))
        }
        "W" => {
            let h = integer_h0(ctx, "W", 1)?;
            Ok(OperatorExpr::gen(Generator::Weyl((h - 1) as u32)))
        }
        "O" | "Ohat" => {
            let h = integer_h0(ctx, &name, 2)?;
            let ord = if name == "O" {
                LogOrdering::Weyl
            } else {
                LogOrdering::Unaveraged
            };
            assemble_log_operator(h, n)?.to_operator(ord)
        }
        "Obar" => {
            let h = integer_h0(ctx, "Obar", 1)?;
            if h != 1 {
                return Err(Error::Domain("Obar is defined at h0 = 1".into()));
            }
            assemble_log_operator(1, n)?.to_operator(LogOrdering::Weyl)
        }
        other => Err(cur.error_prev(format!("unknown operator {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::{CanonicalForm, Engine, FormalSection};

    #[test]
    fn words_reduce() {
        let ctx = WordContext {
            weight: WeightParam::Generic,
            order: 6,
        };
        let e = Engine::generic();
        let f0 = CanonicalForm::section(FormalSection::new("f0", RationalFunction::h0()));
        let op = parse_word("y K[h0]", &ctx).unwrap();
        assert!(op.apply(&e, &f0, 6).unwrap().is_zero());
        let op = parse_word("y x^(h0-1)", &ctx).unwrap();
        assert_eq!(op.apply(&e, &f0, 6).unwrap().len(), 2);
        assert!(parse_word("y q", &ctx).is_err());
        assert!(parse_word("O", &ctx).is_err());
    }
}
