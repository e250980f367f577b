use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{int, is_integer, Rational};
use crate::error::{Error, Result};

/// Monomial `r^r (log r)^logr L^lam x^mono` where `L` is the log of the
/// flat boundary scale: a log density of weight 1 with vanishing gradient.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldKey {
    pub r: Rational,
    pub logr: u32,
    pub lam: u32,
    pub mono: Vec<u32>,
}

impl FieldKey {
    pub fn constant(n: usize) -> Self {
        FieldKey {
            r: Rational::zero(),
            logr: 0,
            lam: 0,
            mono: vec![0; n],
        }
    }
}

/// A weighted field on the half space `r > 0` over `R^n`: a finite sum of
/// rational multiples of [`FieldKey`] monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensityField {
    pub weight: Rational,
    pub n: usize,
    terms: BTreeMap<FieldKey, Rational>,
}

impl DensityField {
    pub fn zero(n: usize, weight: Rational) -> Self {
        DensityField {
            weight,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, weight: Rational, c: Rational) -> Self {
        let mut f = Self::zero(n, weight);
        f.add_term(FieldKey::constant(n), c);
        f
    }

    /// `x_i` (1-based) as a field of the given weight.
    pub fn coordinate(n: usize, weight: Rational, i: usize) -> Self {
        let mut k = FieldKey::constant(n);
        k.mono[i - 1] = 1;
        let mut f = Self::zero(n, weight);
        f.add_term(k, Rational::one());
        f
    }

    /// `r^e` as a field of the given weight.
    pub fn r_power(n: usize, weight: Rational, e: Rational) -> Self {
        let mut k = FieldKey::constant(n);
        k.r = e;
        let mut f = Self::zero(n, weight);
        f.add_term(k, Rational::one());
        f
    }

    /// The log-scale symbol `L` (weight 0 log density).
    pub fn log_scale(n: usize) -> Self {
        let mut k = FieldKey::constant(n);
        k.lam = 1;
        let mut f = Self::zero(n, Rational::zero());
        f.add_term(k, Rational::one());
        f
    }

    pub fn from_terms(n: usize, weight: Rational, terms: impl IntoIterator<Item = (FieldKey, Rational)>) -> Self {
        let mut f = Self::zero(n, weight);
        for (k, c) in terms {
            f.add_term(k, c);
        }
        f
    }

    pub fn add_term(&mut self, key: FieldKey, c: Rational) {
        debug_assert_eq!(key.mono.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FieldKey, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_weight(mut self, w: Rational) -> Self {
        self.weight = w;
        self
    }

    /// Sum; the weight of `self` is kept.
    pub fn add(&self, other: &DensityField) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &DensityField) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &DensityField) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    /// Sums must agree in weight.
    pub fn checked_add(&self, other: &DensityField) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch {
                expected: self.weight.to_string(),
                got: other.weight.to_string(),
            });
        }
        Ok(self.add(other))
    }

    /// Product; weights add.
    pub fn mul(&self, other: &DensityField) -> Self {
        let mut out = Self::zero(self.n, &self.weight + &other.weight);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let k = FieldKey {
                    r: &a.r + &b.r,
                    logr: a.logr + b.logr,
                    lam: a.lam + b.lam,
                    mono: a.mono.iter().zip(&b.mono).map(|(p, q)| p + q).collect(),
                };
                out.add_term(k, ca * cb);
            }
        }
        out
    }

    /// Multiplication by `r^e`, raising the weight by `e`.
    pub fn mul_r(&self, e: &Rational) -> Self {
        let mut out = Self::zero(self.n, &self.weight + e);
        for (k, c) in &self.terms {
            let mut k = k.clone();
            k.r += e;
            out.terms.insert(k, c.clone());
        }
        out
    }

    /// Shift every `r` exponent by `e` without changing the weight.
    pub fn shift_r(&self, e: &Rational) -> Self {
        self.mul_r(e).with_weight(self.weight.clone())
    }

    pub fn mul_logr(&self) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for (k, c) in &self.terms {
            let mut k = k.clone();
            k.logr += 1;
            out.terms.insert(k, c.clone());
        }
        out
    }

    pub fn mul_lam(&self) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for (k, c) in &self.terms {
            let mut k = k.clone();
            k.lam += 1;
            out.terms.insert(k, c.clone());
        }
        out
    }

    /// `d/dr`, with `d/dr log r = 1/r`.
    pub fn d_r(&self) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for (k, c) in &self.terms {
            if !k.r.is_zero() {
                let mut k2 = k.clone();
                k2.r -= Rational::one();
                out.add_term(k2, c * &k.r);
            }
            if k.logr > 0 {
                let mut k2 = k.clone();
                k2.r -= Rational::one();
                k2.logr -= 1;
                out.add_term(k2, c * int(k.logr as i64));
            }
        }
        out
    }

    /// `d/dx_i` (1-based).
    pub fn d_x(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for (k, c) in &self.terms {
            let p = k.mono[i - 1];
            if p > 0 {
                let mut k2 = k.clone();
                k2.mono[i - 1] -= 1;
                out.add_term(k2, c * int(p as i64));
            }
        }
        out
    }

    /// Derivative in the log-scale symbol.
    pub fn d_lam(&self) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for (k, c) in &self.terms {
            if k.lam > 0 {
                let mut k2 = k.clone();
                k2.lam -= 1;
                out.add_term(k2, c * int(k.lam as i64));
            }
        }
        out
    }

    /// `sum_i eps_i d^2/dx_i^2`.
    pub fn laplacian_x(&self, signature: &[i8]) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for i in 1..=self.n {
            let eps = signature.get(i - 1).copied().unwrap_or(1);
            out.add_assign(&self.d_x(i).d_x(i).scale(&int(eps as i64)));
        }
        out
    }

    pub fn has_log_scale(&self) -> bool {
        self.terms.keys().any(|k| k.lam > 0)
    }

    pub fn has_logr(&self) -> bool {
        self.terms.keys().any(|k| k.logr > 0)
    }

    /// Part with the given power of the log-scale symbol, symbol removed.
    pub fn log_scale_part(&self, power: u32) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for (k, c) in &self.terms {
            if k.lam == power {
                let mut k2 = k.clone();
                k2.lam = 0;
                out.add_term(k2, c.clone());
            }
        }
        out
    }

    /// Lowest `r` exponent, `None` for the zero field.
    pub fn r_valuation(&self) -> Option<Rational> {
        self.terms.keys().map(|k| k.r.clone()).min()
    }

    pub fn max_r(&self) -> Option<Rational> {
        self.terms.keys().map(|k| k.r.clone()).max()
    }

    /// Drop terms with `r` exponent above `max`.
    pub fn truncate_r(&self, max: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for (k, c) in &self.terms {
            if &k.r <= max {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficient of `r^e (log r)^l` as an `r`-free field.
    pub fn r_coefficient(&self, e: &Rational, logr: u32) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for (k, c) in &self.terms {
            if &k.r == e && k.logr == logr {
                let mut k2 = k.clone();
                k2.r = Rational::zero();
                k2.logr = 0;
                out.add_term(k2, c.clone());
            }
        }
        out
    }

    /// Distinct `(r exponent, log r power)` pairs in increasing order.
    pub fn r_profile(&self) -> Vec<(Rational, u32)> {
        let mut v: Vec<(Rational, u32)> =
            self.terms.keys().map(|k| (k.r.clone(), k.logr)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Every term has an `r` exponent of at least `e`.
    pub fn divisible_by_r(&self, e: &Rational) -> bool {
        self.terms.keys().all(|k| &k.r >= e)
    }

    /// Restriction to `r = 0`. Negative or fractional `r` powers and log
    /// terms have no restriction and are a domain error.
    pub fn restrict(&self) -> Result<BoundaryField> {
        let mut out = BoundaryField::zero(self.n, self.weight.clone());
        for (k, c) in &self.terms {
            if k.logr > 0 || k.lam > 0 {
                return Err(Error::Domain(
                    "restriction of a field with log terms".into(),
                ));
            }
            if k.r.is_negative() || !is_integer(&k.r) {
                return Err(Error::Domain(format!(
                    "restriction of a field with an r^{} term",
                    k.r
                )));
            }
            if k.r.is_zero() {
                out.add_term(k.mono.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Total degree in the boundary coordinates.
    pub fn x_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| k.mono.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for DensityField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, c) in &self.terms {
            let mut factors = Vec::new();
            if !k.r.is_zero() {
                if k.r.is_one() {
                    factors.push("r".to_string());
                } else if is_integer(&k.r) && k.r.is_positive() {
                    factors.push(format!("r^{}", k.r));
                } else {
                    factors.push(format!("r^({})", k.r));
                }
            }
            match k.logr {
                0 => {}
                1 => factors.push("log(r)".into()),
                l => factors.push(format!("log(r)^{l}")),
            }
            match k.lam {
                0 => {}
                1 => factors.push("logscale".into()),
                l => factors.push(format!("logscale^{l}")),
            }
            for (i, p) in k.mono.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, p)),
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        f.write_str(&out)
    }
}

/// A polynomial field on the boundary `R^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryField {
    pub weight: Rational,
    pub n: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl BoundaryField {
    pub fn zero(n: usize, weight: Rational) -> Self {
        BoundaryField {
            weight,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, mono: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mono.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.weight.clone());
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &BoundaryField) -> Self {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), -v);
        }
        out
    }

    /// `c` with `self = c * other`, if such a rational exists.
    pub fn ratio_to(&self, other: &BoundaryField) -> Option<Rational> {
        if other.is_zero() {
            return if self.is_zero() { Some(Rational::zero()) } else { None };
        }
        let (m, v) = other.terms.iter().next()?;
        let c = self.terms.get(m).cloned().unwrap_or_default() / v;
        if self.sub(&other.scale(&c)).is_zero() {
            Some(c)
        } else {
            None
        }
    }

    /// The `r`-independent extension.
    pub fn extend(&self) -> DensityField {
        DensityField::from_terms(
            self.n,
            self.weight.clone(),
            self.terms.iter().map(|(m, c)| {
                (
                    FieldKey {
                        r: Rational::zero(),
                        logr: 0,
                        lam: 0,
                        mono: m.clone(),
                    },
                    c.clone(),
                )
            }),
        )
    }
}

impl fmt::Display for BoundaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.extend())
    }
}
