use std::collections::BTreeMap;
use std::fmt;

use crate::arith::RationalFunction;

/// Exponent `offset + formal*(h0-1)` of a power of `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct XExp {
    pub formal: i64,
    pub offset: i64,
}

impl XExp {
    pub const ZERO: XExp = XExp { formal: 0, offset: 0 };

    pub fn int(n: i64) -> Self {
        XExp { formal: 0, offset: n }
    }

    /// `h0 - 1 + offset`
    pub fn shifted(offset: i64) -> Self {
        XExp { formal: 1, offset }
    }

    pub fn is_zero(&self) -> bool {
        self.formal == 0 && self.offset == 0
    }

    pub fn value(&self) -> RationalFunction {
        let f = RationalFunction::from_int(self.formal);
        &(&f * &RationalFunction::h0_plus(-1)) + &RationalFunction::from_int(self.offset)
    }

    /// Recognize `c + f*(h0-1)` with integers `c`, `f`.
    pub fn from_ratfunc(a: &RationalFunction) -> Option<Self> {
        if a.denom().degree() != Some(0) {
            return None;
        }
        let cs = a.numer().coeffs();
        if cs.len() > 2 {
            return None;
        }
        let slope = cs.get(1).cloned().unwrap_or_default();
        let c0 = cs.first().cloned().unwrap_or_default();
        let formal = crate::arith::to_i64(&slope)?;
        let offset = crate::arith::to_i64(&(c0 + slope))?;
        Some(XExp { formal, offset })
    }

    /// Exponent used for truncation; the integer part when `h0` is formal.
    pub fn degree(&self) -> i64 {
        self.offset
    }
}

impl std::ops::Add for XExp {
    type Output = XExp;
    fn add(self, o: XExp) -> XExp {
        XExp {
            formal: self.formal + o.formal,
            offset: self.offset + o.offset,
        }
    }
}

impl fmt::Display for XExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.formal, self.offset) {
            (0, o) => write!(f, "{o}"),
            (1, 0) => write!(f, "(h0-1)"),
            (1, o) if o > 0 => write!(f, "(h0-1+{o})"),
            (1, o) => write!(f, "(h0-1{o})"),
            (k, 0) => write!(f, "({k}*(h0-1))"),
            (k, o) if o > 0 => write!(f, "({k}*(h0-1)+{o})"),
            (k, o) => write!(f, "({k}*(h0-1){o})"),
        }
    }
}

/// An abstract section with a definite `h` eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSection {
    pub label: String,
    pub weight: RationalFunction,
}

impl FormalSection {
    pub fn new(label: impl Into<String>, weight: RationalFunction) -> Self {
        FormalSection {
            label: label.into(),
            weight,
        }
    }
}

/// Letters left in the irreducible tail of a term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TailLetter {
    Y,
    LogTau,
    /// Multiplication by a density; `shift` is its effect on the `h`
    /// eigenvalue (twice its weight).
    Mul {
        label: String,
        shift: RationalFunction,
    },
}

impl TailLetter {
    pub fn is_multiplication(&self) -> bool {
        !matches!(self, TailLetter::Y)
    }
}

impl fmt::Display for TailLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailLetter::Y => f.write_str("y"),
            TailLetter::LogTau => f.write_str("logtau"),
            TailLetter::Mul { label, .. } => f.write_str(label),
        }
    }
}

/// Sort each maximal run of mutually commuting multiplication letters.
pub fn normalize_tail(tail: &mut [TailLetter]) {
    let mut i = 0;
    while i < tail.len() {
        if tail[i].is_multiplication() {
            let start = i;
            while i < tail.len() && tail[i].is_multiplication() {
                i += 1;
            }
            tail[start..i].sort();
        } else {
            i += 1;
        }
    }
}

/// `x^a (log x)^l T s` with `T` a tail word acting on the section `s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub x: XExp,
    pub logx: u32,
    pub tail: Vec<TailLetter>,
    pub section: FormalSection,
}

impl TermKey {
    pub fn of(section: FormalSection) -> Self {
        TermKey {
            x: XExp::ZERO,
            logx: 0,
            tail: vec![],
            section,
        }
    }

    pub fn y_count(&self) -> usize {
        self.tail.iter().filter(|l| **l == TailLetter::Y).count()
    }

    pub fn has_logtau(&self) -> bool {
        self.tail.iter().any(|l| *l == TailLetter::LogTau)
    }
}

impl fmt::Display for TermKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.x.is_zero() {
            if self.x == XExp::int(1) {
                parts.push("x".to_string());
            } else {
                parts.push(format!("x^{}", self.x));
            }
        }
        match self.logx {
            0 => {}
            1 => parts.push("logx".into()),
            l => parts.push(format!("logx^{l}")),
        }
        let mut i = 0;
        while i < self.tail.len() {
            let mut j = i;
            while j < self.tail.len() && self.tail[j] == self.tail[i] {
                j += 1;
            }
            if j - i == 1 {
                parts.push(self.tail[i].to_string());
            } else {
                parts.push(format!("{}^{}", self.tail[i], j - i));
            }
            i = j;
        }
        parts.push(self.section.label.clone());
        f.write_str(&parts.join(" "))
    }
}

/// Finite sum of canonical terms; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CanonicalForm {
    terms: BTreeMap<TermKey, RationalFunction>,
}

impl CanonicalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn section(s: FormalSection) -> Self {
        Self::term(TermKey::of(s), RationalFunction::one())
    }

    pub fn term(key: TermKey, c: RationalFunction) -> Self {
        let mut f = Self::zero();
        f.add_term(key, c);
        f
    }

    pub fn add_term(&mut self, key: TermKey, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CanonicalForm, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_form(&mut self, other: &CanonicalForm) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &CanonicalForm) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &RationalFunction::from_int(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TermKey, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &TermKey) -> RationalFunction {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Keep only terms of x-degree below `order`.
    pub fn truncate(&self, order: i64) -> Self {
        CanonicalForm {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.x.degree() < order)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// The term of lowest x-degree (ties broken by key order).
    pub fn leading_term(&self) -> Option<(&TermKey, &RationalFunction)> {
        self.terms.iter().min_by(|a, b| {
            (a.0.x.degree(), a.0).cmp(&(b.0.x.degree(), b.0))
        })
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    k.to_string()
                } else {
                    format!("{c}*{k}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
