use num_traits::{One, Zero};

use super::field::DensityField;
use super::halfspace::HalfSpace;
use super::lindiff::LinDiffOp;
use super::solve::ExpansionSolution;
use super::tangential::idotd_op;
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::series::SolutionKind;

/// `-(r d_r - 2s + n + 1) d_r - r Lap_x` equals `I·D` on weight `w0` fields.
#[derive(Debug, Clone)]
pub struct NormalFormCertificate {
    pub s: Rational,
    /// `2s - n - 1`.
    pub coefficient: Rational,
    /// `d + 2 w0 - 2`, the `d_r` coefficient of `I·D`.
    pub idotd_coefficient: Rational,
    pub normal_form: LinDiffOp,
    pub idotd: LinDiffOp,
    pub holds: bool,
}

/// A solution as `r^(n-s) F + r^s G` (`+ r^s log r G_log`) in the interior
/// scale, where the function is `r^(-w0) f`.
#[derive(Debug, Clone)]
pub struct InteriorForm {
    pub s: Rational,
    pub f_block: DensityField,
    pub g_block: DensityField,
    pub g_log_block: DensityField,
    /// Reassembling the blocks reproduces the interior function.
    pub round_trip: bool,
    pub certificate: NormalFormCertificate,
}

pub fn normal_form_certificate(model: &HalfSpace, w0: &Rational) -> NormalFormCertificate {
    let n = model.n();
    let s = w0 + int(n as i64);
    let coefficient = &s * int(2) - int(n as i64 + 1);
    let z = Rational::zero();
    let mut nf = LinDiffOp::zero(n).with_shift(-Rational::one());
    let mut a = vec![0; n + 1];
    a[0] = 2;
    nf.add_term(a.clone(), DensityField::r_power(n, z.clone(), int(1)).scale(&int(-1)));
    a[0] = 1;
    nf.add_term(a, DensityField::constant(n, z.clone(), coefficient.clone()));
    for (i, &eps) in model.signature.iter().enumerate() {
        let mut a = vec![0; n + 1];
        a[i + 1] = 2;
        nf.add_term(a, DensityField::r_power(n, z.clone(), int(1)).scale(&int(-(eps as i64))));
    }
    let idotd = idotd_op(model, w0);
    NormalFormCertificate {
        holds: nf == idotd,
        idotd_coefficient: model.h_of(w0) - int(2),
        s,
        coefficient,
        normal_form: nf,
        idotd,
    }
}

/// Re-express `sol` in the interior scale with `s = w0 + n`.
pub fn interior_scale_form(sol: &ExpansionSolution, s: &Rational) -> Result<InteriorForm> {
    let n = sol.field.n;
    let model = HalfSpace::new(sol.d);
    if model.n() != n {
        return Err(Error::Domain("solution and model dimensions differ".into()));
    }
    let expected = &sol.w0 + int(n as i64);
    if s != &expected {
        return Err(Error::Domain(format!(
            "inconsistent s = {s}: the solution has w0 + n = {expected}"
        )));
    }
    let z = Rational::zero();
    let lead = &sol.h0 - Rational::one();
    let mut f_block = DensityField::zero(n, z.clone());
    let mut g_block = DensityField::zero(n, z.clone());
    let mut g_log_block = DensityField::zero(n, z.clone());
    match sol.kind {
        SolutionKind::First => f_block = sol.field.clone().with_weight(z.clone()),
        SolutionKind::Second => {
            g_block = sol.field.shift_r(&(-&lead)).with_weight(z.clone());
        }
        SolutionKind::Log | SolutionKind::LogDensity => {
            for (e, l) in sol.field.r_profile() {
                let c = sol.field.r_coefficient(&e, l).shift_r(&e);
                if l == 0 {
                    f_block.add_assign(&c);
                } else {
                    g_log_block.add_assign(&c.shift_r(&(-&lead)));
                }
            }
        }
    }
    // r^(-w0) f = r^(n-s) F + r^s (G + log r G_log), and n - s = -w0
    let interior = sol.field.shift_r(&(-&sol.w0)).with_weight(z.clone());
    let rebuilt = f_block
        .shift_r(&(-&sol.w0))
        .add(&g_block.shift_r(s))
        .add(&g_log_block.mul_logr().shift_r(s));
    Ok(InteriorForm {
        s: s.clone(),
        round_trip: rebuilt == interior,
        f_block,
        g_block,
        g_log_block,
        certificate: normal_form_certificate(&model, &sol.w0),
    })
}
