//! Verification suites. Identity cases expect the residue `0`; measured
//! constants are reported against the value they are compared with.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sl2_boundary::arith::{factorial, int, parse_ratfunc, rat, Rational};
use sl2_boundary::model::{
    gjms_constant, interior_scale_form, obstruction, p_k_build, parse_field_expr, q_holographic,
    random_field, sl2_realization_check, solve_first_kind, solve_log_density, solve_second_kind,
    tangentiality_witness, BoundaryOp, DensityField, SampleShape,
};
use sl2_boundary::series::{
    f_polynomial, g_series, h_series, h_series_closed_form, inhom_residual, k_series, ode_residual,
    OdeKind,
};
use sl2_boundary::sl2::{check, CanonicalForm, Claim, Engine, FormalSection, Generator, ZeroReport};
use sl2_boundary::{Error, RationalFunction, Result, WeightParam};

use crate::Case;

fn zero_case(name: String, residue: &CanonicalForm, witness: impl FnOnce() -> String) -> Case {
    Case::new(name, "identity", "0", residue.to_string()).with_witness(Some(witness()))
}

fn claim_case(rep: &ZeroReport) -> Case {
    let name = format!("{}[h0={}]", rep.claim, rep.weight);
    zero_case(name, &rep.residue, || {
        let first = rep
            .first_offending()
            .map(|(k, c)| format!("{c} * {k}"))
            .unwrap_or_default();
        format!("h0={}, order={}, first={first}", rep.weight, rep.order)
    })
}

pub fn sl2() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    let e = Engine::generic();
    let f = FormalSection::new("f", RationalFunction::h0());
    let w = || "h0=generic".to_string();
    let reduce = |word: &[Generator]| e.reduce(word, &f);
    let (x, y, h) = (Generator::X, Generator::Y, Generator::H);
    let cases = [
        ("sl2.[x,y]=h", e.commutator(&[x.clone()], &[y.clone()], &f).sub(&reduce(&[h.clone()]))),
        ("sl2.[h,x]=2x", e.commutator(&[h.clone()], &[x.clone()], &f).sub(&reduce(&[x.clone()]).scale(&RationalFunction::from_int(2)))),
        ("sl2.[h,y]=-2y", e.commutator(&[h.clone()], &[y.clone()], &f).sub(&reduce(&[y.clone()]).scale(&RationalFunction::from_int(-2)))),
        ("sl2.[h,logx]=2", e.commutator(&[h.clone()], &[Generator::LogX], &f).sub(&reduce(&[]).scale(&RationalFunction::from_int(2)))),
        ("sl2.[x,logtau]=0", e.commutator(&[x.clone()], &[Generator::LogTau], &f)),
    ];
    for (name, res) in cases {
        out.push(zero_case(name.to_string(), &res, w));
    }
    for k in 1..=10usize {
        let kk = k as i64;
        // [x^k, y] f = k (h0 + k - 1) x^{k-1} f
        let lhs = e.commutator(&vec![x.clone(); k], &[y.clone()], &f);
        let rhs = reduce(&vec![x.clone(); k - 1]).scale(&(&RationalFunction::h0_plus(kk - 1) * &RationalFunction::from_int(kk)));
        out.push(zero_case(format!("sl2.[x^{k:02},y]"), &lhs.sub(&rhs), w));
        // [x, y^k] f = k (h0 - k + 1) y^{k-1} f
        let lhs = e.commutator(&[x.clone()], &vec![y.clone(); k], &f);
        let rhs = reduce(&vec![y.clone(); k - 1]).scale(&(&RationalFunction::h0_plus(1 - kk) * &RationalFunction::from_int(kk)));
        out.push(zero_case(format!("sl2.[x,y^{k:02}]"), &lhs.sub(&rhs), w));
    }
    let c = Engine::generic().with_contraction(true);
    out.push(zero_case("sl2.contraction.[x,y]=0".into(), &c.commutator(&[x.clone()], &[y.clone()], &f), w));
    let hx = c.commutator(&[h.clone()], &[x.clone()], &f).sub(&c.reduce(&[x], &f).scale(&RationalFunction::from_int(2)));
    out.push(zero_case("sl2.contraction.[h,x]=2x".into(), &hx, w));
    for claim in [Claim::YAfterK, Claim::KAfterX] {
        out.push(claim_case(&check(claim, &WeightParam::Generic, 12)?));
    }
    Ok(out)
}

fn rf_text(s: &str) -> String {
    parse_ratfunc(s).map(|r| r.to_string()).unwrap_or_else(|e| e.to_string())
}

pub fn series() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    let g = WeightParam::Generic;
    let k = k_series(&g, 20)?;
    out.push(Case::new("series.K.ode_residual", "identity", "0", valuation_text(&ode_residual(&k, OdeKind::First, &g))));
    for (i, p) in ["1", "1/(h0-2)", "1/(2*(h0-2)*(h0-3))"].iter().enumerate() {
        out.push(Case::new(format!("series.K.coefficient_{i}"), "regression", rf_text(p), k.coeff(i).to_string()));
    }
    let gs = g_series(&g, 20)?;
    out.push(Case::new("series.G.ode_residual", "identity", "0", valuation_text(&ode_residual(&gs, OdeKind::Second, &g))));
    out.push(Case::new(
        "series.G=K(2-h0)",
        "identity",
        "true",
        (k.dual_weight() == gs).to_string(),
    ));
    let hs = h_series(&g, 20)?;
    out.push(Case::new("series.H.inhomogeneous_residual", "identity", "0", valuation_text(&inhom_residual(&hs, &gs, &g)?)));
    let printed = [
        "(h0+1)/h0^2",
        "-(h0+2)*(3*h0+1)/(4*h0^2*(h0+1)^2)",
        "(h0+3)*(11*h0^2+18*h0+4)/(36*h0^2*(h0+1)^2*(h0+2)^2)",
        "-(h0+4)*(25*h0^3+98*h0^2+99*h0+18)/(288*h0^2*(h0+1)^2*(h0+2)^2*(h0+3)^2)",
    ];
    for (i, p) in printed.iter().enumerate() {
        out.push(Case::new(format!("series.H.gamma_{i}"), "regression", rf_text(p), hs.coeff(i).to_string()));
    }
    for h in 1..=10i64 {
        let s = h_series(&WeightParam::Value(int(h)), 20)?.constant_coeffs()?;
        let mismatch = (0..=20usize).find(|&k| h_series_closed_form(&int(h), k).ok().as_ref() != Some(&s[k]));
        let case = Case::new(
            format!("series.H.closed_form[h0={h:02}]"),
            "identity",
            "agree",
            if mismatch.is_none() { "agree".to_string() } else { "differ".to_string() },
        )
        .with_witness(mismatch.map(|k| format!("h0={h}, order=20, first=gamma_{k}")));
        out.push(case);
    }
    for h in 2..=8i64 {
        let f = f_polynomial(&int(h))?;
        let k = k_series(&WeightParam::Value(int(h)), (h - 2) as usize)?;
        out.push(Case::new(
            format!("series.F=K_partial_sum[h0={h}]"),
            "identity",
            "true",
            (f.constant_coeffs()? == k.constant_coeffs()?).to_string(),
        ));
    }
    Ok(out)
}

fn valuation_text(s: &sl2_boundary::series::FormalSeries) -> String {
    match s.valuation() {
        None => "0".into(),
        Some(v) => format!("nonzero at z^{v}: {}", s.coeff(v)),
    }
}

fn boundary_terms(b: &sl2_boundary::model::BoundaryField) -> String {
    // weight-free comparison text
    b.extend().with_weight(Rational::from_integer(0.into())).to_string()
}

pub fn model() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for d in 3..=6 {
        let rep = sl2_realization_check(d, 20)?;
        let first = rep.failures.first().map(|f| format!("d={d}, {} on {}", f.identity, f.witness));
        out.push(
            Case::new(format!("model.sl2_realization[d={d}]"), "identity", "0 failures", format!("{} failures", rep.failures.len()))
                .with_witness(first),
        );
    }
    for (k, d, c) in [(2u32, 4i64, "1"), (4, 6, "9")] {
        let rep = gjms_constant(k, d, 3)?;
        let got = rep.constant.map(|c| c.to_string()).unwrap_or_else(|| "inconsistent".into());
        out.push(Case::new(format!("model.gjms_constant[k={k}]"), "measured", c, got));
    }
    for k in [1u32, 3, 5] {
        let rep = gjms_constant(k, 6, 0)?;
        out.push(Case::new(format!("model.gjms_zero_restriction[k={k}]"), "identity", "true", rep.zero_restriction.to_string()));
    }
    for k in 1..=6u32 {
        let p = p_k_build(k, 4)?;
        let ok = p.tangential && tangentiality_witness(&p, 20, k as u64).is_none();
        out.push(Case::new(format!("model.tangential[k={k}]"), "identity", "true", ok.to_string()));
    }
    let z = || Rational::from_integer(0.into());
    out.push(Case::new("model.Q(0)[n=2]", "identity", "0", q_holographic(&DensityField::zero(2, z()), 2)?.to_string()));
    let w = parse_field_expr("x1^2", 2, z())?;
    out.push(Case::new("model.Q(x1^2)[n=2]", "oracle", "2", q_holographic(&w, 2)?.to_string()));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [2usize, 4] {
        let lap = BoundaryOp::laplacian_power(&vec![1; n], n as u32 / 2);
        let shape = SampleShape::new(n).x_degree(n as u32 + 2);
        let mut bad = None;
        for _ in 0..10 {
            let w = random_field(&mut rng, &shape, z());
            let q = boundary_terms(&q_holographic(&w, n)?);
            let p = boundary_terms(&lap.apply(&w.restrict()?));
            if q != p && bad.is_none() {
                bad = Some(format!("omega = {w}: Q = {q}, Lap^(n/2) omega = {p}"));
            }
        }
        out.push(
            Case::new(format!("model.Q_transformation_law[n={n}]"), "identity", "true", bad.is_none().to_string())
                .with_witness(bad),
        );
    }
    let w0 = rat(-1, 4);
    let a = solve_first_kind(&parse_field_expr("x1^2", 3, w0.clone())?, 4, 10)?;
    out.push(Case::new("model.first_kind.x1^2", "regression", "x1^2 + 2*r^2", a.field.to_string()));
    out.push(Case::new("model.first_kind.residual", "regression", "inf", residual_text(&a)));
    let b = solve_second_kind(&parse_field_expr("1", 3, rat(-11, 4))?, 4, &w0, 10, None)?;
    out.push(Case::new("model.second_kind.1", "regression", "r^(5/2)", b.field.to_string()));
    out.push(Case::new("model.second_kind.residual", "regression", "inf", residual_text(&b)));
    for h0 in [3i64, 5] {
        let f0 = parse_field_expr("x1^4 + x1^3*x2 + x2^2*x3", 3, rat(h0 - 4, 2))?;
        let p = obstruction(&f0, 4)?;
        let got = match solve_first_kind(&f0, 4, 6) {
            Err(Error::Obstructed { ell, multiple, .. }) => format!(
                "l={ell}, multiple={}",
                multiple.map(|m| m.to_string()).unwrap_or_else(|| "none".into())
            ),
            Ok(_) => format!("unobstructed, P f0 = {p}"),
            Err(e) => return Err(e),
        };
        let f = factorial((h0 - 2) as u64);
        let expected = format!("l={}, multiple={}", h0 - 2, (&f * &f).recip());
        out.push(Case::new(format!("model.obstruction[h0={h0}]"), "measured", expected, got));
    }
    let fa = interior_scale_form(&a, &rat(11, 4))?;
    out.push(Case::new("model.interior.normal_form", "identity", "true", fa.certificate.holds.to_string()));
    out.push(Case::new("model.interior.round_trip", "identity", "true", fa.round_trip.to_string()));
    let u0 = parse_field_expr("-x1^2", 2, z())?;
    let s = solve_log_density(&u0, 3, 6, &DensityField::zero(2, z()))?;
    let c = s.log_coefficient().map(|r| r.map(|b| boundary_terms(&b))).transpose()?.unwrap_or_default();
    let q_half = boundary_terms(&q_holographic(&u0.scale(&int(-1)), 2)?.scale(&rat(1, 2)));
    out.push(Case::new("model.log_density.coefficient=Q/2[n=2]", "oracle", q_half, c));
    let u0 = parse_field_expr("x1^2 + x2*x3^2", 3, z())?;
    let s = solve_log_density(&u0, 4, 6, &DensityField::zero(3, z()))?;
    out.push(Case::new("model.log_density.log_free[n=3]", "identity", "false", s.field.has_logr().to_string()));
    Ok(out)
}

fn residual_text(s: &sl2_boundary::model::ExpansionSolution) -> String {
    s.residual_order().map(|v| v.to_string()).unwrap_or_else(|| "inf".into())
}

pub fn logops() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for h in 1..=6i64 {
        let w = WeightParam::Value(int(h));
        for claim in [Claim::YAfterLog, Claim::LogAfterX, Claim::YAfterUnaveraged, Claim::LogTauShift, Claim::WeylRule] {
            out.push(claim_case(&check(claim, &w, 10)?));
        }
        if h >= 2 {
            out.push(claim_case(&check(Claim::UnaveragedLeftover, &w, 10)?));
        }
    }
    Ok(out)
}
