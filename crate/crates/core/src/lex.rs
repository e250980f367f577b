//! Tokenizer shared by the textual front ends (weights, fields, words).

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const SYMBOLS: &str = "+-*/^()[],";

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
            continue;
        }
        if SYMBOLS.contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Parse {
            line,
            column: col,
            message: format!("unexpected character {c:?}"),
        });
    }
    Ok(out)
}

/// Cursor over a token stream with position-annotated errors.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        let lines: Vec<&str> = text.split('\n').collect();
        let end = (
            lines.len().max(1),
            lines.last().map(|l| l.chars().count() + 1).unwrap_or(1),
        );
        Ok(Cursor { toks, pos: 0, end })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    /// Error located at the current token (or end of input).
    pub fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.column),
            None => self.end,
        };
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Error located at the previously consumed token.
    pub fn error_prev(&self, message: impl Into<String>) -> Error {
        let (line, column) = match self.pos.checked_sub(1).and_then(|p| self.toks.get(p)) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        };
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// A nonnegative integer literal that fits in `u32`.
    pub fn small_uint(&mut self) -> Result<u32> {
        match self.next() {
            Some(Tok::Int(n)) => {
                u32::try_from(&n).map_err(|_| self.error_prev("exponent too large"))
            }
            _ => Err(self.error_prev("expected a nonnegative integer")),
        }
    }

    /// A possibly negative integer, optionally parenthesized: `3`, `-1`, `(-2)`.
    pub fn signed_int(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let v = match self.next() {
            Some(Tok::Int(n)) => {
                i64::try_from(&n).map_err(|_| self.error_prev("integer too large"))?
            }
            _ => return Err(self.error_prev("expected an integer")),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -v } else { v })
    }
}
