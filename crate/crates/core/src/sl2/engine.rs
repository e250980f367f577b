use super::canonical::{normalize_tail, CanonicalForm, FormalSection, TailLetter, TermKey, XExp};
use crate::arith::RationalFunction;
use crate::error::Result;
use crate::WeightParam;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
    H,
    LogX,
    LogTau,
    XPow(XExp),
    /// `(log tau y^m)_W = (log tau y^m + y^m log tau)/2`
    Weyl(u32),
    /// Multiplication by a density whose weight changes `h` by `shift`.
    Mul {
        label: String,
        shift: RationalFunction,
    },
}

impl Generator {
    /// `x^a` for `a` of the form `c + f*(h0-1)`; `x^1` becomes `X`.
    pub fn xpow(a: &RationalFunction) -> Result<Generator> {
        let e = XExp::from_ratfunc(a).ok_or_else(|| {
            crate::error::Error::Domain(format!(
                "exponent {a} is not an integer or integer-shifted h0-1"
            ))
        })?;
        Ok(if e == XExp::int(1) {
            Generator::X
        } else {
            Generator::XPow(e)
        })
    }
}

/// Rewriting engine. Generators are applied right to left to canonical
/// forms; every application returns a canonical form.
#[derive(Debug, Clone)]
pub struct Engine {
    pub weight: WeightParam,
    /// Drop every commutator that needs `[x, y] = h` (the `I^2 = 0` case).
    pub contraction: bool,
    /// Use the registered `[(log tau y^m)_W, x] f1 = -m y^{m-1} f1` rule
    /// on terms `x f1` with `h f1 = (m-1) f1` instead of expanding.
    pub weyl_rule: bool,
    /// Replace `log tau` by `log tau + x t` for this multiplication letter.
    pub logtau_shift: Option<TailLetter>,
}

impl Engine {
    pub fn new(weight: WeightParam) -> Self {
        Engine {
            weight,
            contraction: false,
            weyl_rule: false,
            logtau_shift: None,
        }
    }

    pub fn generic() -> Self {
        Self::new(WeightParam::Generic)
    }

    pub fn with_contraction(mut self, on: bool) -> Self {
        self.contraction = on;
        self
    }

    pub fn with_weyl_rule(mut self, on: bool) -> Self {
        self.weyl_rule = on;
        self
    }

    pub fn with_logtau_shift(mut self, label: &str, shift: RationalFunction) -> Self {
        self.logtau_shift = Some(TailLetter::Mul {
            label: label.to_string(),
            shift,
        });
        self
    }

    /// Specialize a coefficient to the engine's weight.
    pub fn spec(&self, f: &RationalFunction) -> Result<RationalFunction> {
        self.weight.specialize(f)
    }

    /// A section with its weight specialized.
    pub fn section(&self, label: &str, weight: &RationalFunction) -> Result<FormalSection> {
        Ok(FormalSection::new(label, self.spec(weight)?))
    }

    fn norm_x(&self, e: XExp) -> XExp {
        match self.weight.value().and_then(crate::arith::to_i64) {
            Some(h) if e.formal != 0 => XExp::int(e.offset + e.formal * (h - 1)),
            _ => e,
        }
    }

    fn xvalue(&self, e: XExp) -> RationalFunction {
        self.weight
            .specialize(&e.value())
            .expect("polynomial exponent has no poles")
    }

    pub fn apply(&self, g: &Generator, f: &CanonicalForm) -> CanonicalForm {
        match g {
            Generator::X => self.mul_x(f, XExp::int(1)),
            Generator::XPow(e) => self.mul_x(f, *e),
            Generator::Y => self.apply_y(f),
            Generator::H => self.apply_h(f),
            Generator::LogX => self.mul_logx(f),
            Generator::LogTau => self.apply_logtau(f),
            Generator::Weyl(m) => self.apply_weyl(*m, f),
            Generator::Mul { label, shift } => self.prepend(
                f,
                TailLetter::Mul {
                    label: label.clone(),
                    shift: shift.clone(),
                },
            ),
        }
    }

    /// Reduce `word` (leftmost factor acts last) applied to `target`.
    pub fn reduce(&self, word: &[Generator], target: &FormalSection) -> CanonicalForm {
        self.apply_word(word, &CanonicalForm::section(target.clone()))
    }

    pub fn apply_word(&self, word: &[Generator], f: &CanonicalForm) -> CanonicalForm {
        word.iter().rev().fold(f.clone(), |acc, g| self.apply(g, &acc))
    }

    /// `reduce(ab) - reduce(ba)`.
    pub fn commutator(
        &self,
        a: &[Generator],
        b: &[Generator],
        target: &FormalSection,
    ) -> CanonicalForm {
        let ab: Vec<Generator> = a.iter().chain(b).cloned().collect();
        let ba: Vec<Generator> = b.iter().chain(a).cloned().collect();
        self.reduce(&ab, target).sub(&self.reduce(&ba, target))
    }

    pub fn mul_x(&self, f: &CanonicalForm, e: XExp) -> CanonicalForm {
        let mut out = CanonicalForm::zero();
        for (k, c) in f.iter() {
            let mut k = k.clone();
            k.x = self.norm_x(k.x + e);
            out.add_term(k, c.clone());
        }
        out
    }

    fn mul_logx(&self, f: &CanonicalForm) -> CanonicalForm {
        let mut out = CanonicalForm::zero();
        for (k, c) in f.iter() {
            let mut k = k.clone();
            k.logx += 1;
            out.add_term(k, c.clone());
        }
        out
    }

    fn prepend(&self, f: &CanonicalForm, letter: TailLetter) -> CanonicalForm {
        let mut out = CanonicalForm::zero();
        for (k, c) in f.iter() {
            let mut k = k.clone();
            k.tail.insert(0, letter.clone());
            normalize_tail(&mut k.tail);
            out.add_term(k, c.clone());
        }
        out
    }

    fn apply_logtau(&self, f: &CanonicalForm) -> CanonicalForm {
        let mut out = self.prepend(f, TailLetter::LogTau);
        if let Some(t) = &self.logtau_shift {
            let shifted = self.mul_x(&self.prepend(f, t.clone()), XExp::int(1));
            out.add_form(&shifted);
        }
        out
    }

    /// `h` eigenvalue part of a term, ignoring the log contributions.
    fn eigen(&self, k: &TermKey) -> RationalFunction {
        let mut w = &k.section.weight + &self.xvalue(k.x).scale(&crate::arith::int(2));
        for l in &k.tail {
            match l {
                TailLetter::Y => w = &w - &RationalFunction::from_int(2),
                TailLetter::LogTau => {}
                TailLetter::Mul { shift, .. } => w = &w + shift,
            }
        }
        w
    }

    pub fn apply_h(&self, f: &CanonicalForm) -> CanonicalForm {
        let mut out = CanonicalForm::zero();
        let two = RationalFunction::from_int(2);
        for (k, c) in f.iter() {
            out.add_term(k.clone(), &self.eigen(k) * c);
            if k.logx > 0 {
                let mut k2 = k.clone();
                k2.logx -= 1;
                out.add_term(k2, c.scale(&crate::arith::int(2 * k.logx as i64)));
            }
            for (i, l) in k.tail.iter().enumerate() {
                if *l == TailLetter::LogTau {
                    let mut k2 = k.clone();
                    k2.tail.remove(i);
                    normalize_tail(&mut k2.tail);
                    out.add_term(k2, c * &two);
                }
            }
        }
        out
    }

    pub fn apply_y(&self, f: &CanonicalForm) -> CanonicalForm {
        let mut out = CanonicalForm::zero();
        for (k, c) in f.iter() {
            out.add_form(&self.y_term(k, c));
        }
        out
    }

    fn y_term(&self, k: &TermKey, c: &RationalFunction) -> CanonicalForm {
        if !k.x.is_zero() {
            // y x^a R = x^a y R - a x^{a-1} (h + a - 1) R
            let mut rk = k.clone();
            rk.x = XExp::ZERO;
            let r = CanonicalForm::term(rk.clone(), c.clone());
            let mut out = self.mul_x(&self.y_term(&rk, c), k.x);
            if self.contraction {
                return out;
            }
            let a = self.xvalue(k.x);
            let mut inner = self.apply_h(&r);
            inner.add_scaled(&r, &(&a - &RationalFunction::one()));
            let lowered = self.mul_x(&inner, self.norm_x(k.x + XExp::int(-1)));
            out.add_scaled(&lowered, &-&a);
            return out;
        }
        if k.logx > 0 {
            // y L S = L y S - x^{-1} (h - 1) S
            let mut sk = k.clone();
            sk.logx -= 1;
            let s = CanonicalForm::term(sk.clone(), c.clone());
            let mut out = self.mul_logx(&self.y_term(&sk, c));
            if self.contraction {
                return out;
            }
            let mut inner = self.apply_h(&s);
            inner.add_scaled(&s, &RationalFunction::from_int(-1));
            out.add_scaled(&self.mul_x(&inner, XExp::int(-1)), &RationalFunction::from_int(-1));
            return out;
        }
        let mut k2 = k.clone();
        k2.tail.insert(0, TailLetter::Y);
        CanonicalForm::term(k2, c.clone())
    }

    fn y_pow(&self, m: u32, f: &CanonicalForm) -> CanonicalForm {
        (0..m).fold(f.clone(), |acc, _| self.apply_y(&acc))
    }

    fn weyl_definition(&self, m: u32, f: &CanonicalForm) -> CanonicalForm {
        let half = RationalFunction::constant(crate::arith::rat(1, 2));
        let mut out = self.apply_logtau(&self.y_pow(m, f));
        out.add_form(&self.y_pow(m, &self.apply_logtau(f)));
        out.scale(&half)
    }

    fn apply_weyl(&self, m: u32, f: &CanonicalForm) -> CanonicalForm {
        if !self.weyl_rule || self.logtau_shift.is_some() {
            return self.weyl_definition(m, f);
        }
        let acting = RationalFunction::from_int(m as i64 - 1);
        let mut out = CanonicalForm::zero();
        for (k, c) in f.iter() {
            let single = CanonicalForm::term(k.clone(), c.clone());
            let matches = k.x == XExp::int(1)
                && k.logx == 0
                && k.tail.is_empty()
                && k.section.weight == acting
                && m >= 1;
            if !matches {
                out.add_form(&self.weyl_definition(m, &single));
                continue;
            }
            let mut base = k.clone();
            base.x = XExp::ZERO;
            let f1 = CanonicalForm::term(base, c.clone());
            out.add_form(&self.mul_x(&self.weyl_definition(m, &f1), XExp::int(1)));
            out.add_scaled(
                &self.y_pow(m - 1, &f1),
                &RationalFunction::from_int(-(m as i64)),
            );
        }
        out
    }
}
