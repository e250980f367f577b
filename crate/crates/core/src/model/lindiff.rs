use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::field::{BoundaryField, DensityField};
use crate::arith::{binomial, int, Rational};

/// Derivative multi-index: entry 0 is the order in `r`, entry `i` the
/// order in `x_i`.
pub type DerivIndex = Vec<u32>;

/// Linear differential operator `sum_a c_a(r, x) d^a` on half-space fields.
/// Applying it shifts the weight by `shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinDiffOp {
    pub n: usize,
    pub shift: Rational,
    terms: BTreeMap<DerivIndex, DensityField>,
}

fn coeff_field(n: usize) -> DensityField {
    DensityField::zero(n, Rational::zero())
}

fn derive(f: &DensityField, a: &[u32]) -> DensityField {
    let mut out = f.clone();
    for _ in 0..a[0] {
        out = out.d_r();
    }
    for (i, &k) in a.iter().enumerate().skip(1) {
        for _ in 0..k {
            out = out.d_x(i);
        }
    }
    out
}

impl LinDiffOp {
    pub fn zero(n: usize) -> Self {
        LinDiffOp {
            n,
            shift: Rational::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::multiplication(&DensityField::constant(n, Rational::zero(), Rational::one()))
    }

    /// Multiplication by `f`; the weight shift is the weight of `f`.
    pub fn multiplication(f: &DensityField) -> Self {
        let mut op = Self::zero(f.n);
        op.shift = f.weight.clone();
        op.add_term(vec![0; f.n + 1], f.clone().with_weight(Rational::zero()));
        op
    }

    /// `d^a`.
    pub fn derivative(n: usize, a: DerivIndex) -> Self {
        let mut op = Self::zero(n);
        op.add_term(a, DensityField::constant(n, Rational::zero(), Rational::one()));
        op
    }

    pub fn with_shift(mut self, s: Rational) -> Self {
        self.shift = s;
        self
    }

    pub fn add_term(&mut self, a: DerivIndex, c: DensityField) {
        debug_assert_eq!(a.len(), self.n + 1);
        let e = self.terms.entry(a.clone()).or_insert_with(|| coeff_field(self.n));
        e.add_assign(&c);
        if e.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivIndex, &DensityField)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|a| a.iter().sum()).max().unwrap_or(0)
    }

    /// Sum; the shift of `self` is kept.
    pub fn add(&self, other: &LinDiffOp) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LinDiffOp) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.n).with_shift(self.shift.clone());
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.scale(k));
        }
        out
    }

    /// `self ∘ other`, by the Leibniz rule.
    pub fn compose(&self, other: &LinDiffOp) -> Self {
        let mut out = Self::zero(self.n).with_shift(&self.shift + &other.shift);
        for (a, c) in &self.terms {
            // d^a (c' d^b) = sum_{g <= a} binom(a, g) (d^g c') d^{a-g+b}
            for g in sub_indices(a) {
                let mut mult = Rational::one();
                for (ai, gi) in a.iter().zip(&g) {
                    mult *= binomial(*ai as u64, *gi as u64);
                }
                for (b, c2) in &other.terms {
                    let dc2 = derive(c2, &g);
                    if dc2.is_zero() {
                        continue;
                    }
                    let idx: DerivIndex = a
                        .iter()
                        .zip(&g)
                        .zip(b)
                        .map(|((ai, gi), bi)| ai - gi + bi)
                        .collect();
                    out.add_term(idx, c.mul(&dc2).scale(&mult));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &LinDiffOp) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn apply(&self, f: &DensityField) -> DensityField {
        let w = &f.weight + &self.shift;
        let mut out = DensityField::zero(f.n, w.clone());
        for (a, c) in &self.terms {
            out.add_assign(&c.mul(&derive(f, a)));
        }
        out.with_weight(w)
    }

    /// Every coefficient lies in `r^e` times the field space.
    pub fn coefficients_divisible_by_r(&self, e: &Rational) -> bool {
        self.terms.values().all(|c| c.divisible_by_r(e))
    }

    /// The induced boundary operator on `r`-independent fields at `r = 0`:
    /// `d_r` terms dropped, coefficients restricted. `None` if a
    /// coefficient has no restriction.
    pub fn boundary_part(&self) -> Option<BoundaryOp> {
        let mut out = BoundaryOp {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (a, c) in &self.terms {
            if a[0] > 0 {
                continue;
            }
            let b = c.restrict().ok()?;
            if !b.is_zero() {
                out.terms.insert(a[1..].to_vec(), b);
            }
        }
        Some(out)
    }
}

fn sub_indices(a: &[u32]) -> Vec<DerivIndex> {
    let mut out = vec![Vec::with_capacity(a.len())];
    for &k in a {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |j| {
                    let mut q = p.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
    }
    out
}

fn write_index(f: &mut fmt::Formatter<'_>, a: &[u32], names: &dyn Fn(usize) -> String) -> fmt::Result {
    let mut first = true;
    for (i, &k) in a.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "d{}", names(i))?;
        } else {
            write!(f, "d{}^{k}", names(i))?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

impl fmt::Display for LinDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = |i: usize| if i == 0 { "r".to_string() } else { format!("x{i}") };
        for (j, (a, c)) in self.terms.iter().enumerate() {
            if j > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*")?;
            write_index(f, a, &names)?;
        }
        Ok(())
    }
}

/// Differential operator on boundary polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryOp {
    pub n: usize,
    terms: BTreeMap<Vec<u32>, BoundaryField>,
}

impl BoundaryOp {
    /// `(sum_i eps_i d_i^2)^m`.
    pub fn laplacian_power(signature: &[i8], m: u32) -> Self {
        let n = signature.len();
        let mut op = LinDiffOp::identity(n);
        let mut lap = LinDiffOp::zero(n);
        for (i, &s) in signature.iter().enumerate() {
            let mut a = vec![0; n + 1];
            a[i + 1] = 2;
            lap.add_term(a, DensityField::constant(n, Rational::zero(), int(s as i64)));
        }
        for _ in 0..m {
            op = op.compose(&lap);
        }
        op.boundary_part().expect("constant coefficients")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BoundaryField)> {
        self.terms.iter()
    }

    pub fn apply(&self, f: &BoundaryField) -> BoundaryField {
        let mut out = BoundaryField::zero(f.n, f.weight.clone());
        let ext = f.extend();
        for (a, c) in &self.terms {
            let mut full = vec![0];
            full.extend_from_slice(a);
            let g = c.extend().mul(&derive(&ext, &full));
            for (m, v) in g.restrict().expect("polynomial").terms() {
                out.add_term(m.clone(), v.clone());
            }
        }
        out
    }

    /// `c` with `self = c * other`, if the operators are proportional.
    pub fn ratio_to(&self, other: &BoundaryOp) -> Option<Rational> {
        let (a, b) = match other.terms.iter().next() {
            None => return if self.is_zero() { Some(Rational::zero()) } else { None },
            Some(t) => t,
        };
        let c = self.terms.get(a)?.ratio_to(b)?;
        let keys_match = self.terms.len() == other.terms.len()
            && other
                .terms
                .iter()
                .all(|(k, v)| self.terms.get(k).is_some_and(|s| s.sub(&v.scale(&c)).is_zero()));
        keys_match.then_some(c)
    }
}

impl fmt::Display for BoundaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = |i: usize| format!("x{}", i + 1);
        for (j, (a, c)) in self.terms.iter().enumerate() {
            if j > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*")?;
            write_index(f, a, &names)?;
        }
        Ok(())
    }
}
