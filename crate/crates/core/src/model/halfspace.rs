use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::field::DensityField;
use crate::arith::{int, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::sl2::{Block, CanonicalForm, Generator, OperatorExpr, TailLetter, XExp};

/// Hyperbolic half space over flat `R^n` with `sigma = r` and `I^2 = 1`.
/// `log_tau` is the function part of the log of the second scale, i.e.
/// `log tau = L + log_tau` with `L` the log of the flat scale.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    pub d: i64,
    pub signature: Vec<i8>,
    pub log_tau: DensityField,
}

impl HalfSpace {
    pub fn new(d: i64) -> Self {
        let n = (d - 1).max(0) as usize;
        HalfSpace {
            d,
            signature: vec![1; n],
            log_tau: DensityField::zero(n, Rational::zero()),
        }
    }

    /// Boundary signature with the first coordinate timelike.
    pub fn lorentzian(d: i64) -> Self {
        let mut m = Self::new(d);
        if let Some(s) = m.signature.first_mut() {
            *s = -1;
        }
        m
    }

    pub fn with_log_tau(mut self, psi: DensityField) -> Self {
        self.log_tau = psi.with_weight(Rational::zero());
        self
    }

    pub fn n(&self) -> usize {
        self.signature.len()
    }

    /// `h0 = d + 2w` for a field of weight `w`.
    pub fn h_of(&self, w: &Rational) -> Rational {
        int(self.d) + w * int(2)
    }

    /// `I·D f = -r (d_r^2 + Lap_x) f + d_r[(d + 2w' - 2) f]`, where
    /// `w' f = w f + dF/dL` accounts for the log-scale symbol.
    pub fn idotd(&self, f: &DensityField) -> DensityField {
        let w = &f.weight;
        let drf = f.d_r();
        let lap = drf.d_r().add(&f.laplacian_x(&self.signature));
        let mut out = lap.mul_r(&Rational::one()).scale(&int(-1));
        out.add_assign(&drf.scale(&(int(self.d) + w * int(2) - int(2))));
        out.add_assign(&f.d_lam().d_r().scale(&int(2)));
        out.with_weight(w - Rational::one())
    }

    /// `y = -I·D`.
    pub fn y(&self, f: &DensityField) -> DensityField {
        self.idotd(f).scale(&int(-1))
    }

    pub fn y_pow(&self, k: usize, f: &DensityField) -> DensityField {
        (0..k).fold(f.clone(), |acc, _| self.y(&acc))
    }

    pub fn x(&self, f: &DensityField) -> DensityField {
        f.mul_r(&Rational::one())
    }

    pub fn h(&self, f: &DensityField) -> DensityField {
        f.scale(&self.h_of(&f.weight))
            .add(&f.d_lam().scale(&int(2)))
    }

    /// `log x = log r + L`.
    pub fn log_x(&self, f: &DensityField) -> DensityField {
        f.mul_logr().add(&f.mul_lam())
    }

    /// `log tau = L + psi`.
    pub fn log_tau_mul(&self, f: &DensityField) -> DensityField {
        f.mul_lam().add(&self.log_tau.mul(f).with_weight(f.weight.clone()))
    }

    fn x_pow(&self, e: &XExp, h0: &Rational, f: &DensityField) -> Result<DensityField> {
        let a = e.value().eval(h0)?;
        Ok(f.mul_r(&a))
    }

    /// Apply a generator, with `h0` fixing formal exponents.
    pub fn apply_generator(
        &self,
        g: &Generator,
        h0: &Rational,
        mul: &BTreeMap<String, DensityField>,
        f: &DensityField,
    ) -> Result<DensityField> {
        Ok(match g {
            Generator::X => self.x(f),
            Generator::Y => self.y(f),
            Generator::H => self.h(f),
            Generator::LogX => self.log_x(f),
            Generator::LogTau => self.log_tau_mul(f),
            Generator::XPow(e) => self.x_pow(e, h0, f)?,
            Generator::Weyl(m) => {
                let m = *m as usize;
                let a = self.log_tau_mul(&self.y_pow(m, f));
                let b = self.y_pow(m, &self.log_tau_mul(f));
                a.add(&b).scale(&crate::arith::rat(1, 2))
            }
            Generator::Mul { label, .. } => {
                let t = mul
                    .get(label)
                    .ok_or_else(|| Error::Domain(format!("no field bound to {label}")))?;
                t.mul(f)
            }
        })
    }

    /// Apply an operator expression, keeping series terms through `z^order`.
    /// Coefficients are evaluated at `h0`.
    pub fn apply_expr(
        &self,
        expr: &OperatorExpr,
        h0: &Rational,
        f: &DensityField,
        order: usize,
    ) -> Result<DensityField> {
        let empty = BTreeMap::new();
        let mut out = DensityField::zero(f.n, f.weight.clone());
        for (c, product) in expr.terms() {
            let c = c.eval(h0)?;
            if c.is_zero() {
                continue;
            }
            let mut acc = f.clone();
            for b in product.iter().rev() {
                acc = match b {
                    Block::Gen(g) => self.apply_generator(g, h0, &empty, &acc)?,
                    Block::Series(s) => {
                        let mut sum = DensityField::zero(acc.n, acc.weight.clone());
                        let mut yk = acc.clone();
                        for k in 0..=s.order().min(order) {
                            if k > 0 {
                                yk = self.y(&yk);
                            }
                            let ck = s.coeff(k).eval(h0)?;
                            if !ck.is_zero() {
                                sum.add_assign(&yk.mul_r(&int(k as i64)).scale(&ck));
                            }
                        }
                        sum
                    }
                };
            }
            out.weight = acc.weight.clone();
            out.add_assign(&acc.scale(&c));
        }
        Ok(out)
    }

    /// Evaluate a canonical form, binding section labels and multiplication
    /// letters to fields; coefficients are evaluated at `h0`.
    pub fn eval_form(
        &self,
        form: &CanonicalForm,
        h0: &Rational,
        bindings: &BTreeMap<String, DensityField>,
    ) -> Result<DensityField> {
        let mut out: Option<DensityField> = None;
        for (key, c) in form.iter() {
            let c = c.eval(h0)?;
            let mut f = bindings
                .get(&key.section.label)
                .cloned()
                .ok_or_else(|| Error::Domain(format!("unbound section {}", key.section.label)))?;
            for letter in key.tail.iter().rev() {
                f = match letter {
                    TailLetter::Y => self.y(&f),
                    TailLetter::LogTau => self.log_tau_mul(&f),
                    TailLetter::Mul { label, .. } => {
                        let t = bindings
                            .get(label)
                            .ok_or_else(|| Error::Domain(format!("unbound field {label}")))?;
                        t.mul(&f)
                    }
                };
            }
            for _ in 0..key.logx {
                f = self.log_x(&f);
            }
            f = self.x_pow(&key.x, h0, &f)?;
            let term = f.scale(&c);
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term),
            });
        }
        Ok(out.unwrap_or_else(|| DensityField::zero(self.n(), Rational::zero())))
    }
}

/// `I·D` on the Riemannian half space of dimension `d`.
pub fn idotd_apply(f: &DensityField, d: i64) -> DensityField {
    let mut m = HalfSpace::new(d);
    m.signature = vec![1; f.n];
    m.log_tau = DensityField::zero(f.n, Rational::zero());
    m.idotd(f)
}

/// `h0 = d + 2w` as a rational function constant.
pub fn weight_of(d: i64, w: &Rational) -> RationalFunction {
    RationalFunction::constant(int(d) + w * int(2))
}
