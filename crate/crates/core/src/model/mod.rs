//! The hyperbolic half space `r > 0` over flat `R^n` (`d = n + 1`), with
//! `sigma = r`, `I^2 = 1`, `x = r`, `y = -I·D` and `h = d + 2w`.

mod field;
mod halfspace;
mod interior;
mod lindiff;
mod parse;
mod qcurv;
mod realize;
mod sample;
mod solve;
mod tangential;

pub use field::{BoundaryField, DensityField, FieldKey};
pub use halfspace::{idotd_apply, weight_of, HalfSpace};
pub use lindiff::{BoundaryOp, DerivIndex, LinDiffOp};
pub use parse::parse_field_expr;
pub use sample::{random_field, SampleShape};
pub use tangential::{
    gjms_constant, gjms_constant_in, idotd_op, obstruction, obstruction_in, p_k_build, p_k_build_in,
    tangentiality_witness, GjmsCase, GjmsReport, TangentialOperator,
};
pub use realize::{sl2_realization_check, sl2_realization_check_in, RealizationFailure, RealizationReport};
pub use qcurv::{q_generalized_in, q_holographic, QCurvature};
pub use solve::{
    solve_first_kind, solve_first_kind_in, solve_log_density, solve_log_density_in, solve_log_kind,
    solve_log_kind_in, solve_second_kind, solve_second_kind_in, ExpansionSolution, SolutionTerm,
};
pub use interior::{interior_scale_form, normal_form_certificate, InteriorForm, NormalFormCertificate};
