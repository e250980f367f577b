use num_traits::{One, Signed, Zero};

use super::field::{BoundaryField, DensityField};
use super::halfspace::HalfSpace;
use super::tangential::{integer_at_least, obstruction_in};
use crate::arith::{factorial, int, is_integer, to_i64, Pochhammer, Rational};
use crate::error::{Error, Result};
use crate::series::{assemble_log_density_operator, assemble_log_operator, LogOrdering, SolutionKind};

/// A truncated boundary expansion of a solution of `I·D f = 0`.
#[derive(Debug, Clone)]
pub struct ExpansionSolution {
    pub kind: SolutionKind,
    pub d: i64,
    pub w0: Rational,
    pub h0: Rational,
    pub order: usize,
    /// Leading exponent: `0`, or `h0 - 1` for the second kind.
    pub alpha: Rational,
    /// `smooth[m]` multiplies `r^(alpha + m)`.
    pub smooth: Vec<DensityField>,
    /// `log_part[m]` multiplies `r^(h0 - 1 + m) log r`.
    pub log_part: Option<Vec<DensityField>>,
    /// Function part of `log tau`.
    pub log_tau: DensityField,
    /// The assembled field, of weight `w0`, in the flat trivialization.
    pub field: DensityField,
    /// `I·D field`.
    pub residual: DensityField,
}

/// One `r^e (log r)^l` group of an assembled solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTerm {
    pub sigma_power: Rational,
    pub log: bool,
    pub field: DensityField,
}

impl ExpansionSolution {
    /// Lowest `r` power in the residual; `None` when it vanishes identically.
    pub fn residual_order(&self) -> Option<Rational> {
        self.residual.r_valuation()
    }

    /// Residual order counted from the leading exponent.
    pub fn residual_order_beyond_prefactor(&self) -> Option<Rational> {
        self.residual_order().map(|v| v - &self.alpha + Rational::one())
    }

    /// The assembled field grouped by `r` power and `log r` power.
    pub fn terms(&self) -> Vec<SolutionTerm> {
        self.field
            .r_profile()
            .into_iter()
            .map(|(e, l)| SolutionTerm {
                field: self.field.r_coefficient(&e, l).mul_r(&e).with_weight(self.w0.clone()),
                sigma_power: e,
                log: l > 0,
            })
            .map(|mut t| {
                if t.log {
                    t.field = t.field.mul_logr();
                }
                t
            })
            .collect()
    }

    /// `fbar0` restricted: the `r^(h0-1) log r` coefficient at `r = 0`.
    pub fn log_coefficient(&self) -> Option<Result<BoundaryField>> {
        self.log_part
            .as_ref()
            .and_then(|p| p.first())
            .map(|f| f.restrict())
    }
}

fn check_n(model: &HalfSpace, f: &DensityField) -> Result<()> {
    if f.n != model.n() {
        return Err(Error::Domain(format!(
            "field lives on R^{} but the model boundary is R^{}",
            f.n,
            model.n()
        )));
    }
    Ok(())
}

/// Closed form `sum_m r^m (I·D)^m f0 / (m! (m+1-h0)_m)`.
fn closed_form(model: &HalfSpace, f0: &DensityField, order: usize) -> Result<Vec<DensityField>> {
    let h0 = model.h_of(&f0.weight);
    let mut out = Vec::with_capacity(order + 1);
    let mut acc = f0.clone();
    for m in 0..=order {
        if m > 0 {
            acc = model.idotd(&acc);
        }
        let den = factorial(m as u64) * (int(m as i64 + 1) - &h0).pochhammer(m);
        if den.is_zero() {
            return Err(Error::pole(h0, "first-kind coefficient"));
        }
        out.push(acc.scale(&den.recip()));
    }
    Ok(out)
}

fn assemble(parts: &[DensityField], alpha: &Rational, w0: &Rational, n: usize) -> DensityField {
    let mut field = DensityField::zero(n, w0.clone());
    for (m, p) in parts.iter().enumerate() {
        field.add_assign(&p.shift_r(&(alpha + int(m as i64))));
    }
    field
}

/// Order-by-order solution at an integer `h0 >= 2`: `r^(l+1) g` cancels the
/// `r^l` residual, except at `l = h0 - 2` where the residual must vanish.
fn order_by_order(model: &HalfSpace, f0: &DensityField, order: usize, h0: i64) -> Result<Vec<DensityField>> {
    if f0.has_logr() || f0.r_profile().iter().any(|(e, _)| !is_integer(e) || e.is_negative()) {
        return Err(Error::Domain(
            "at an integer weight the data must be polynomial in r".into(),
        ));
    }
    let w0 = f0.weight.clone();
    let n = f0.n;
    let mut parts = vec![f0.clone()];
    for l in 0..order {
        let field = assemble(&parts, &Rational::zero(), &w0, n);
        let res = model.y(&field).r_coefficient(&int(l as i64), 0);
        let k = int(l as i64 + 1) * int(l as i64 + 2 - h0);
        let g = if k.is_zero() {
            if !res.is_zero() {
                let obs = res.restrict()?;
                let p = obstruction_in(model, f0)?;
                return Err(Error::Obstructed {
                    ell: l,
                    h0: int(h0),
                    obstruction: obs.to_string(),
                    multiple: if p.is_zero() { None } else { obs.ratio_to(&p) },
                });
            }
            DensityField::zero(n, Rational::zero())
        } else {
            res.scale(&(-k.recip()))
        };
        parts.push(g.with_weight(&w0 - int(l as i64 + 1)));
    }
    Ok(parts)
}

fn finish(
    model: &HalfSpace,
    kind: SolutionKind,
    w0: Rational,
    order: usize,
    alpha: Rational,
    smooth: Vec<DensityField>,
    log_part: Option<Vec<DensityField>>,
    field: DensityField,
) -> ExpansionSolution {
    let residual = model.idotd(&field);
    ExpansionSolution {
        kind,
        d: model.d,
        h0: model.h_of(&w0),
        w0,
        order,
        alpha,
        smooth,
        log_part,
        log_tau: model.log_tau.clone(),
        field,
        residual,
    }
}

pub fn solve_first_kind(f0: &DensityField, d: i64, order: usize) -> Result<ExpansionSolution> {
    solve_first_kind_in(&HalfSpace::new(d), f0, order)
}

/// `f0 -> sum_m r^m (I·D)^m f0 / (m!(m+1-h0)_m)` through `r^order`. At an
/// integer `h0` in `2..=order+1` the expansion is built order by order and
/// fails with [`Error::Obstructed`] at `l = h0 - 2` unless the obstruction
/// vanishes.
pub fn solve_first_kind_in(model: &HalfSpace, f0: &DensityField, order: usize) -> Result<ExpansionSolution> {
    check_n(model, f0)?;
    let h0 = model.h_of(&f0.weight);
    let exceptional = to_i64(&h0).filter(|h| is_integer(&h0) && *h >= 2 && *h <= order as i64 + 1);
    let smooth = match exceptional {
        Some(h) => order_by_order(model, f0, order, h)?,
        None => closed_form(model, f0, order)?,
    };
    let field = assemble(&smooth, &Rational::zero(), &f0.weight, f0.n);
    Ok(finish(
        model,
        SolutionKind::First,
        f0.weight.clone(),
        order,
        Rational::zero(),
        smooth,
        None,
        field,
    ))
}

pub fn solve_second_kind(
    fbar0: &DensityField,
    d: i64,
    w0: &Rational,
    order: usize,
    alpha: Option<&Rational>,
) -> Result<ExpansionSolution> {
    solve_second_kind_in(&HalfSpace::new(d), fbar0, w0, order, alpha)
}

/// `r^(h0-1) :K^(2-h0): fbar0` for data of weight `1 - d - w0`. Requesting
/// `alpha = 0` gives the first kind; any other exponent but `h0 - 1` has no
/// solution.
pub fn solve_second_kind_in(
    model: &HalfSpace,
    fbar0: &DensityField,
    w0: &Rational,
    order: usize,
    alpha: Option<&Rational>,
) -> Result<ExpansionSolution> {
    check_n(model, fbar0)?;
    let h0 = model.h_of(w0);
    let lead = &h0 - Rational::one();
    match alpha {
        Some(a) if a.is_zero() && !lead.is_zero() => {
            if &fbar0.weight != w0 {
                return Err(Error::WeightMismatch {
                    expected: w0.to_string(),
                    got: fbar0.weight.to_string(),
                });
            }
            return solve_first_kind_in(model, fbar0, order);
        }
        Some(a) if a != &lead => {
            return Err(Error::NoSolution(format!(
                "leading exponent {a} is neither 0 nor h0 - 1 = {lead}"
            )))
        }
        _ => {}
    }
    if is_integer(&h0) && !h0.is_positive() {
        return Err(Error::pole(h0, "second-kind solution at h0 <= 0"));
    }
    let wbar = int(1 - model.d) - w0;
    if fbar0.weight != wbar {
        return Err(Error::WeightMismatch {
            expected: wbar.to_string(),
            got: fbar0.weight.to_string(),
        });
    }
    let smooth = closed_form(model, fbar0, order)?;
    let field = assemble(&smooth, &lead, w0, fbar0.n);
    Ok(finish(model, SolutionKind::Second, w0.clone(), order, lead, smooth, None, field))
}

/// Split an assembled log solution into its `log r`-free and `log r` parts.
fn split_log(field: &DensityField, h0: i64, order: usize) -> Result<(Vec<DensityField>, Vec<DensityField>)> {
    let mut smooth = Vec::new();
    let mut log_part = Vec::new();
    for (e, l) in field.r_profile() {
        let ok = is_integer(&e) && !e.is_negative() && l <= 1 && (l == 0 || e >= int(h0 - 1));
        if !ok {
            return Err(Error::Internal(format!(
                "unexpected r^{e} log(r)^{l} term in a log solution"
            )));
        }
    }
    for m in 0..=order {
        smooth.push(field.r_coefficient(&int(m as i64), 0));
    }
    let top = (order as i64).max(h0 - 1);
    for e in (h0 - 1)..=top {
        log_part.push(field.r_coefficient(&int(e), 1));
    }
    Ok((smooth, log_part))
}

pub fn solve_log_kind(f0: &DensityField, d: i64, order: usize, log_tau: &DensityField) -> Result<ExpansionSolution> {
    let model = HalfSpace::new(d).with_log_tau(log_tau.clone());
    solve_log_kind_in(&model, f0, order)
}

/// The canonical log solution at an integer `h0 >= 1` through `r^order`,
/// with `log tau` taken from the model. At `h0 = 1` the data is `fbar0`.
pub fn solve_log_kind_in(model: &HalfSpace, f0: &DensityField, order: usize) -> Result<ExpansionSolution> {
    check_n(model, f0)?;
    let h0r = model.h_of(&f0.weight);
    let h0 = integer_at_least(&h0r, 1)?;
    let op = assemble_log_operator(h0, order)?.to_operator(LogOrdering::Weyl)?;
    let raw = model.apply_expr(&op, &h0r, f0, order)?;
    if raw.has_log_scale() {
        return Err(Error::Internal(
            "log solution depends on the log-scale symbol".into(),
        ));
    }
    let field = raw.truncate_r(&int(order as i64)).with_weight(f0.weight.clone());
    let (smooth, log_part) = split_log(&field, h0, order)?;
    Ok(finish(
        model,
        SolutionKind::Log,
        f0.weight.clone(),
        order,
        Rational::zero(),
        smooth,
        Some(log_part),
        field,
    ))
}

pub fn solve_log_density(u0: &DensityField, d: i64, order: usize, log_tau: &DensityField) -> Result<ExpansionSolution> {
    let model = HalfSpace::new(d).with_log_tau(log_tau.clone());
    solve_log_density_in(&model, u0, order)
}

/// Solve `I·D U = 0` for the log density `U0 = L + u0`, `L` the log of the
/// flat scale, with the log operator at `h0 = d`. The solution is reported
/// in the flat trivialization, where `L` is represented by `0`.
pub fn solve_log_density_in(model: &HalfSpace, u0: &DensityField, order: usize) -> Result<ExpansionSolution> {
    check_n(model, u0)?;
    if u0.has_log_scale() || u0.has_logr() {
        return Err(Error::Domain("log-density data must be polynomial".into()));
    }
    let d = model.d;
    let op = assemble_log_density_operator(d, order)?.to_operator(LogOrdering::Weyl)?;
    let big_u = DensityField::log_scale(u0.n).add(&u0.clone().with_weight(Rational::zero()));
    let raw = model.apply_expr(&op, &int(d), &big_u, order)?;
    let scale_part = raw.log_scale_part(1);
    let expected = DensityField::constant(u0.n, Rational::zero(), Rational::one());
    if scale_part.with_weight(Rational::zero()) != expected
        || raw.log_scale_part(2).len() + raw.log_scale_part(3).len() > 0
    {
        return Err(Error::Internal(
            "log-density solution does not carry the log scale exactly once".into(),
        ));
    }
    let field = raw
        .log_scale_part(0)
        .truncate_r(&int(order as i64))
        .with_weight(Rational::zero());
    let (smooth, log_part) = split_log(&field, d, order)?;
    // I·D L = 0 in the flat model, so the function part carries the residual
    let mut sol = finish(
        model,
        SolutionKind::LogDensity,
        Rational::zero(),
        order,
        Rational::zero(),
        smooth,
        Some(log_part),
        field,
    );
    sol.residual = model.idotd(&DensityField::log_scale(u0.n).add(&sol.field));
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::model::parse_field_expr;

    fn f(s: &str, n: usize, w: Rational) -> DensityField {
        parse_field_expr(s, n, w).unwrap()
    }

    #[test]
    fn exact_first_kind() {
        let s = solve_first_kind(&f("x1^2", 3, rat(-1, 4)), 4, 6).unwrap();
        assert_eq!(s.field.to_string(), "x1^2 + 2*r^2");
        assert!(s.residual.is_zero());
        let t = solve_first_kind(&f("x1^2", 3, rat(-1, 4)), 4, 1).unwrap();
        assert_eq!(t.residual.to_string(), "-2/3*r");
        assert_eq!(t.residual_order(), Some(int(1)));
    }

    #[test]
    fn exact_second_kind() {
        let w0 = rat(-1, 4);
        let s = solve_second_kind(&f("1", 3, rat(-11, 4)), 4, &w0, 6, None).unwrap();
        assert_eq!(s.field.to_string(), "r^(5/2)");
        assert!(s.residual.is_zero());
        assert!(matches!(
            solve_second_kind(&f("1", 3, rat(-11, 4)), 4, &w0, 6, Some(&int(1))),
            Err(Error::NoSolution(_))
        ));
        assert!(matches!(
            solve_second_kind(&f("1", 3, int(0)), 4, &w0, 6, None),
            Err(Error::WeightMismatch { .. })
        ));
        let a0 = solve_second_kind(&f("x1^2", 3, w0.clone()), 4, &w0, 6, Some(&int(0))).unwrap();
        assert_eq!(a0.kind, SolutionKind::First);
    }

    #[test]
    fn obstructed_first_kind() {
        match solve_first_kind(&f("x1^2", 3, rat(-1, 2)), 4, 4) {
            Err(Error::Obstructed { ell, multiple, .. }) => {
                assert_eq!(ell, 1);
                assert_eq!(multiple, Some(int(1)));
            }
            other => panic!("{other:?}"),
        }
        let s = solve_first_kind(&f("x1^2", 3, int(-1)), 4, 4).unwrap();
        assert!(s.residual_order().map_or(true, |v| v >= int(4)));
    }

    #[test]
    fn log_kind_examples() {
        let z3 = DensityField::zero(3, Rational::zero());
        let s = solve_log_kind(&f("x1^2", 3, int(0)), 4, 6, &z3).unwrap();
        assert!(s.log_part.as_ref().unwrap().iter().all(|p| p.is_zero()));
        assert!(s.residual_order().map_or(true, |v| v >= int(6)));
        let s = solve_log_kind(&f("x1^2", 3, rat(-1, 2)), 4, 6, &z3).unwrap();
        assert_eq!(s.log_coefficient().unwrap().unwrap().to_string(), "-1");
        assert!(s.residual_order().map_or(true, |v| v >= int(6)), "{}", s.residual);
    }

    #[test]
    fn log_density_examples() {
        let z2 = DensityField::zero(2, Rational::zero());
        let s = solve_log_density(&z2, 3, 5, &z2).unwrap();
        assert!(s.field.is_zero());
        let u = f("-x1^2", 2, int(0));
        let s = solve_log_density(&u, 3, 5, &z2).unwrap();
        // Q(x1^2) = 2, log coefficient Q/2
        assert_eq!(s.log_coefficient().unwrap().unwrap().to_string(), "1");
        assert!(s.residual_order().map_or(true, |v| v >= int(5)), "{}", s.residual);
    }
}
