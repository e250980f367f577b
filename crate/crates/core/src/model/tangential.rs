use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{BoundaryField, DensityField};
use super::halfspace::HalfSpace;
use super::lindiff::{BoundaryOp, LinDiffOp};
use super::sample::{random_field, SampleShape};
use crate::arith::{double_factorial, int, is_integer, rat, to_i64, Rational};
use crate::error::{Error, Result};

/// `I·D` on fields of weight `w` as an explicit operator.
pub fn idotd_op(model: &HalfSpace, w: &Rational) -> LinDiffOp {
    let n = model.n();
    let z = Rational::zero();
    let mut op = LinDiffOp::zero(n).with_shift(-Rational::one());
    let minus_r = DensityField::r_power(n, z.clone(), int(1)).scale(&int(-1));
    let mut a = vec![0; n + 1];
    a[0] = 2;
    op.add_term(a, minus_r.clone());
    for (i, &s) in model.signature.iter().enumerate() {
        let mut a = vec![0; n + 1];
        a[i + 1] = 2;
        op.add_term(a, minus_r.scale(&int(s as i64)));
    }
    let mut a = vec![0; n + 1];
    a[0] = 1;
    op.add_term(a, DensityField::constant(n, z, model.h_of(w) - int(2)));
    op
}

/// `P_k = y^k` on weight `(k - n)/2`, composed explicitly, with its
/// tangentiality certificate.
#[derive(Debug, Clone)]
pub struct TangentialOperator {
    pub k: u32,
    pub d: i64,
    pub weight: Rational,
    pub op: LinDiffOp,
    /// `P_k ∘ r` has every coefficient divisible by `r`.
    pub tangential: bool,
}

impl TangentialOperator {
    /// The operator induced on boundary data.
    pub fn boundary(&self) -> BoundaryOp {
        self.op
            .boundary_part()
            .expect("P_k has polynomial coefficients")
    }

    pub fn apply(&self, f: &DensityField) -> Result<DensityField> {
        if f.weight != self.weight {
            return Err(Error::WeightMismatch {
                expected: self.weight.to_string(),
                got: f.weight.to_string(),
            });
        }
        Ok(self.op.apply(f))
    }
}

pub fn p_k_build(k: u32, d: i64) -> Result<TangentialOperator> {
    p_k_build_in(&HalfSpace::new(d), k)
}

pub fn p_k_build_in(model: &HalfSpace, k: u32) -> Result<TangentialOperator> {
    if k == 0 {
        return Err(Error::Domain("P_k needs k >= 1".into()));
    }
    if model.d < 2 {
        return Err(Error::Domain(format!("dimension d = {} too small", model.d)));
    }
    let n = model.n();
    let weight = rat(k as i64 - n as i64, 2);
    let mut op = LinDiffOp::identity(n);
    for j in 0..k {
        let w = &weight - int(j as i64);
        op = idotd_op(model, &w).scale(&int(-1)).compose(&op);
    }
    let r = DensityField::r_power(n, Rational::one(), int(1));
    let tangential = op
        .compose(&LinDiffOp::multiplication(&r))
        .coefficients_divisible_by_r(&int(1));
    Ok(TangentialOperator {
        k,
        d: model.d,
        weight,
        op,
        tangential,
    })
}

/// First `g` (of `trials` random ones) with `P_k(r g)` not divisible by `r`.
pub fn tangentiality_witness(
    p: &TangentialOperator,
    trials: usize,
    seed: u64,
) -> Option<DensityField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = SampleShape::new(p.op.n).x_degree(p.k + 2);
    let w = &p.weight - Rational::one();
    (0..trials).find_map(|_| {
        let g = random_field(&mut rng, &shape, w.clone());
        let out = p.op.apply(&g.mul_r(&Rational::one()));
        (!out.divisible_by_r(&Rational::one())).then_some(g)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GjmsCase {
    pub input: BoundaryField,
    pub got: BoundaryField,
    pub laplacian_power: BoundaryField,
    pub ratio: Option<Rational>,
}

#[derive(Debug, Clone)]
pub struct GjmsReport {
    pub k: u32,
    pub d: i64,
    pub boundary_operator: BoundaryOp,
    /// Single `c` with `P_k|_bdy = c Lap^{k/2}`; `None` for odd `k` or when
    /// the monomial ratios disagree.
    pub constant: Option<Rational>,
    pub expected_abs: Option<Rational>,
    pub zero_restriction: bool,
    pub cases: Vec<GjmsCase>,
}

impl GjmsReport {
    pub fn sign(&self) -> i8 {
        match &self.constant {
            Some(c) if c.is_positive() => 1,
            Some(c) if c.is_negative() => -1,
            _ => 0,
        }
    }

    pub fn passes(&self) -> bool {
        if self.k % 2 == 1 {
            return self.zero_restriction;
        }
        match (&self.constant, &self.expected_abs) {
            (Some(c), Some(e)) => &c.abs() == e,
            _ => false,
        }
    }
}

fn monomials(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m: Vec<u32>| {
                let used: u32 = m.iter().sum();
                (0..=max_degree - used).map(move |e| {
                    let mut m2 = m.clone();
                    m2.push(e);
                    m2
                })
            })
            .collect();
    }
    out
}

pub fn gjms_constant(k: u32, d: i64, trials: usize) -> Result<GjmsReport> {
    gjms_constant_in(&HalfSpace::new(d), k, trials, 7)
}

/// Measure `c` in `P_k f|_bdy = c Lap^{k/2} f|_bdy` on all monomials of
/// degree `<= k + 1` and `trials` random boundary polynomials.
pub fn gjms_constant_in(model: &HalfSpace, k: u32, trials: usize, seed: u64) -> Result<GjmsReport> {
    let p = p_k_build_in(model, k)?;
    let bop = p.boundary();
    let n = model.n();
    let zero_restriction = bop.is_zero();
    let mut report = GjmsReport {
        k,
        d: model.d,
        boundary_operator: bop.clone(),
        constant: None,
        expected_abs: None,
        zero_restriction,
        cases: Vec::new(),
    };
    if k % 2 == 1 {
        return Ok(report);
    }
    report.expected_abs = Some({
        let f = double_factorial(k as i64 - 1);
        &f * &f
    });
    let lap = BoundaryOp::laplacian_power(&model.signature, k / 2);
    let mut inputs: Vec<BoundaryField> = monomials(n, k + 1)
        .into_iter()
        .map(|m| {
            let mut b = BoundaryField::zero(n, p.weight.clone());
            b.add_term(m, Rational::one());
            b
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = SampleShape::new(n).boundary().x_degree(k + 2).terms(5);
    for _ in 0..trials {
        inputs.push(random_field(&mut rng, &shape, p.weight.clone()).restrict()?);
    }
    let mut common: Option<Rational> = None;
    let mut consistent = true;
    for input in inputs {
        let got = bop.apply(&input);
        let lp = lap.apply(&input);
        let ratio = got.ratio_to(&lp);
        match (&ratio, lp.is_zero()) {
            (None, _) => consistent = false,
            (Some(_), true) => {}
            (Some(c), false) => match &common {
                None => common = Some(c.clone()),
                Some(c0) if c0 != c => consistent = false,
                _ => {}
            },
        }
        report.cases.push(GjmsCase {
            input,
            got,
            laplacian_power: lp,
            ratio,
        });
    }
    if consistent && bop.ratio_to(&lap) == common {
        report.constant = common;
    }
    Ok(report)
}

/// `P_{h0-1} f0|_bdy` for `h0 = d + 2 w0` an integer `>= 2`.
pub fn obstruction(f0: &DensityField, d: i64) -> Result<BoundaryField> {
    obstruction_in(&HalfSpace::new(d), f0)
}

pub fn obstruction_in(model: &HalfSpace, f0: &DensityField) -> Result<BoundaryField> {
    let h0 = model.h_of(&f0.weight);
    let m = integer_at_least(&h0, 2)?;
    model.y_pow((m - 1) as usize, f0).restrict()
}

pub(crate) fn integer_at_least(h0: &Rational, min: i64) -> Result<i64> {
    match to_i64(h0) {
        Some(m) if is_integer(h0) && m >= min => Ok(m),
        _ => Err(Error::Domain(format!(
            "needs an integer h0 >= {min}, got h0 = {h0}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_field_expr;

    #[test]
    fn p1_restricts_to_zero() {
        let p = p_k_build(1, 4).unwrap();
        assert!(p.tangential);
        assert!(p.boundary().is_zero());
        assert_eq!(p.weight, int(-1));
    }

    #[test]
    fn p2_is_the_laplacian() {
        let p = p_k_build(2, 4).unwrap();
        let f = parse_field_expr("x1^2", 3, rat(-1, 2)).unwrap();
        assert_eq!(p.apply(&f).unwrap().restrict().unwrap().to_string(), "2");
        assert!(p.tangential);
        let one = DensityField::constant(3, int(0), int(1));
        assert!(p_k_build(3, 4).unwrap().op.apply(&one).is_zero());
    }

    #[test]
    fn gjms_constants() {
        let r2 = gjms_constant(2, 4, 3).unwrap();
        assert_eq!(r2.constant, Some(int(1)));
        assert!(r2.passes());
        let r3 = gjms_constant(3, 4, 0).unwrap();
        assert!(r3.zero_restriction && r3.passes());
    }

    #[test]
    fn obstruction_examples() {
        let f = parse_field_expr("x1^2", 3, rat(-1, 2)).unwrap();
        assert_eq!(obstruction(&f, 4).unwrap().to_string(), "2");
        let f = parse_field_expr("x1^2", 3, int(-1)).unwrap();
        assert!(obstruction(&f, 4).unwrap().is_zero());
        let f = parse_field_expr("x1^2", 3, rat(-1, 4)).unwrap();
        assert!(matches!(obstruction(&f, 4), Err(Error::Domain(_))));
    }
}
