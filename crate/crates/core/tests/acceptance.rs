//! One line per acceptance criterion, with its runtime bound.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2_boundary::arith::{factorial, int, parse_ratfunc, rat, Rational};
use sl2_boundary::model::{
    gjms_constant, interior_scale_form, obstruction, parse_field_expr, q_holographic, random_field,
    sl2_realization_check, solve_first_kind, solve_log_density, solve_second_kind, BoundaryField,
    BoundaryOp, DensityField, HalfSpace, SampleShape,
};
use sl2_boundary::series::{h_series, h_series_closed_form, k_series, ode_residual, OdeKind};
use sl2_boundary::sl2::verify::unaveraged_leftover;
use sl2_boundary::sl2::{check, Claim, Engine};
use sl2_boundary::{Error, RationalFunction, WeightParam};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn terms(b: &BoundaryField) -> Vec<(Vec<u32>, Rational)> {
    b.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn k_series_fidelity() -> Outcome {
    let g = WeightParam::Generic;
    let k = k_series(&g, 20).map_err(err)?;
    let h = RationalFunction::h0();
    for m in 1..=20usize {
        let mm = RationalFunction::from_int(m as i64);
        let lhs = &(&(&mm * &(&mm - &h + RationalFunction::one())) * &k.coeff(m)) + &k.coeff(m - 1);
        ensure(lhs.is_zero(), format!("recursion fails at k = {m}"))?;
    }
    let printed = ["1", "1/(h0-2)", "1/(2*(h0-2)*(h0-3))"];
    for (i, p) in printed.iter().enumerate() {
        ensure(k.coeff(i) == parse_ratfunc(p).unwrap(), format!("a_{i} = {}", k.coeff(i)))?;
    }
    ensure(ode_residual(&k, OdeKind::First, &g).is_zero(), "ODE residual nonzero")?;
    Ok("recursion and ODE exact through z^20, leading terms match".into())
}

fn h_series_double_derivation() -> Outcome {
    for h in 1..=10i64 {
        let s = h_series(&WeightParam::Value(int(h)), 20).map_err(err)?;
        for (k, c) in s.constant_coeffs().map_err(err)?.iter().enumerate() {
            let closed = h_series_closed_form(&int(h), k).map_err(err)?;
            ensure(c == &closed, format!("h0 = {h}, k = {k}: {c} vs {closed}"))?;
        }
    }
    let s = h_series(&WeightParam::Generic, 3).map_err(err)?;
    let printed = [
        "(h0+1)/h0^2",
        "-(h0+2)*(3*h0+1)/(4*h0^2*(h0+1)^2)",
        "(h0+3)*(11*h0^2+18*h0+4)/(36*h0^2*(h0+1)^2*(h0+2)^2)",
        "-(h0+4)*(25*h0^3+98*h0^2+99*h0+18)/(288*h0^2*(h0+1)^2*(h0+2)^2*(h0+3)^2)",
    ];
    for (i, p) in printed.iter().enumerate() {
        ensure(s.coeff(i) == parse_ratfunc(p).unwrap(), format!("gamma_{i} = {}", s.coeff(i)))?;
    }
    Ok("210 recurrence/closed-form pairs agree, gamma_0..gamma_3 match".into())
}

fn operator_annihilation() -> Outcome {
    let g = WeightParam::Generic;
    for claim in [Claim::YAfterK, Claim::KAfterX] {
        let rep = check(claim, &g, 12).map_err(err)?;
        ensure(rep.vanishes(), format!("{} leaves {:?}", rep.claim, rep.first_offending()))?;
    }
    for h in 1..=8i64 {
        let w = WeightParam::Value(int(h));
        for claim in [Claim::YAfterLog, Claim::LogAfterX] {
            let rep = check(claim, &w, 12).map_err(err)?;
            ensure(rep.vanishes(), format!("{} at h0 = {h}", rep.claim))?;
        }
    }
    let mut leftovers = 0;
    for h in 2..=8i64 {
        let w = WeightParam::Value(int(h));
        let engine = Engine::new(w.clone());
        let (got, expected) = unaveraged_leftover(&engine, h, 12).map_err(err)?;
        ensure(!got.is_zero(), format!("unaveraged operator passes at h0 = {h}"))?;
        ensure(got == expected, format!("unaveraged residue differs from the leftover at h0 = {h}"))?;
        let rep = check(Claim::UnaveragedLeftover, &w, 12).map_err(err)?;
        ensure(rep.vanishes(), "leftover claim")?;
        leftovers += 1;
    }
    Ok(format!(
        "K generic to x^12, O at h0 = 2..8 and Obar at h0 = 1 vanish; unaveraged fails with the leftover at {leftovers} weights"
    ))
}

fn model_sl2() -> Outcome {
    let mut checks = 0;
    for d in 3..=6 {
        let rep = sl2_realization_check(d, 100).map_err(err)?;
        if let Some(f) = rep.failures.first() {
            return Err(format!("d = {d}: {} on {}", f.identity, f.witness));
        }
        checks += rep.checks;
    }
    Ok(format!("{checks} identities on 400 random fields, d = 3..6"))
}

fn gjms_constants() -> Outcome {
    let mut out = Vec::new();
    for (k, d) in [(2u32, 4i64), (4, 6)] {
        let rep = gjms_constant(k, d, 10).map_err(err)?;
        let c = rep.constant.clone().ok_or(format!("k = {k}: no consistent constant"))?;
        ensure(rep.passes(), format!("k = {k}: |c| = {c}, expected {:?}", rep.expected_abs))?;
        ensure(rep.sign() != 0, "sign")?;
        out.push(format!("k={k}: c = {c}"));
    }
    for k in [1u32, 3, 5] {
        let rep = gjms_constant(k, 6, 0).map_err(err)?;
        ensure(rep.zero_restriction, format!("P_{k} restricts to a nonzero operator"))?;
    }
    Ok(format!("{}, {}; k = 1,3,5 restrict to zero", out[0], out[1]))
}

fn q_curvature() -> Outcome {
    ensure(q_holographic(&DensityField::zero(2, Rational::zero()), 2).map_err(err)?.is_zero(), "Q(0) != 0 at n = 2")?;
    ensure(q_holographic(&DensityField::zero(4, Rational::zero()), 4).map_err(err)?.is_zero(), "Q(0) != 0 at n = 4")?;
    // Gauss curvature of e^{-2 omega} delta for omega = (x1^2 + x1 x2)/4,
    // by finite differences: K e^{-2 omega} = Lap omega = 1/2
    let omega = parse_field_expr("1/4*x1^2 + 1/4*x1*x2", 2, Rational::zero()).map_err(err)?;
    let q = q_holographic(&omega, 2).map_err(err)?;
    ensure(q.to_string() == "1/2", format!("Q = {q}"))?;
    let conf = |u: f64, v: f64| (-(u * u + u * v) / 2.0).exp();
    let h = 1e-3;
    let log_conf_lap = |u: f64, v: f64| {
        let l = |a: f64, b: f64| conf(a, b).ln();
        (l(u + h, v) + l(u - h, v) + l(u, v + h) + l(u, v - h) - 4.0 * l(u, v)) / (h * h)
    };
    for (u, v) in [(0.1, 0.2), (-0.3, 0.25)] {
        let gauss = -log_conf_lap(u, v) / (2.0 * conf(u, v));
        let q_num = gauss * conf(u, v);
        ensure((q_num - 0.5).abs() < 1e-5, format!("Gauss oracle gives {q_num}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in [2usize, 4] {
        let lap = BoundaryOp::laplacian_power(&vec![1; n], n as u32 / 2);
        let shape = SampleShape::new(n).x_degree(n as u32 + 2);
        for _ in 0..20 {
            let w = random_field(&mut rng, &shape, Rational::zero());
            let dq = q_holographic(&w, n).map_err(err)?;
            let p = lap.apply(&w.restrict().map_err(err)?);
            ensure(terms(&dq) == terms(&p), format!("transformation law fails for {w}"))?;
        }
    }
    let u0 = parse_field_expr("-x1^2", 2, Rational::zero()).map_err(err)?;
    let s = solve_log_density(&u0, 3, 6, &DensityField::zero(2, Rational::zero())).map_err(err)?;
    let c = s.log_coefficient().ok_or("no log part")?.map_err(err)?;
    let qx = q_holographic(&u0.scale(&int(-1)), 2).map_err(err)?;
    ensure(terms(&c) == terms(&qx.scale(&rat(1, 2))), format!("log coefficient {c}, Q = {qx}"))?;
    for e in ["x1^2 + x2*x3", "x1^4 - 2*x2^2*x3"] {
        let u0 = parse_field_expr(e, 3, Rational::zero()).map_err(err)?;
        let s = solve_log_density(&u0, 4, 6, &DensityField::zero(3, Rational::zero())).map_err(err)?;
        ensure(!s.field.has_logr(), format!("log terms at n = 3 for {e}"))?;
    }
    Ok(format!(
        "Q(0) = 0, sign fixed by Gauss (Q = Lap omega, u0 = -x1^2 gives log coefficient {c} = Q/2), law holds on 40 random omega, n = 3 log free"
    ))
}

fn exact_solutions() -> Outcome {
    let w0 = rat(-1, 4);
    let a = solve_first_kind(&parse_field_expr("x1^2", 3, w0.clone()).map_err(err)?, 4, 10).map_err(err)?;
    ensure(a.field.to_string() == "x1^2 + 2*r^2", format!("first kind gives {}", a.field))?;
    ensure(a.residual.is_zero(), "first-kind residual")?;
    let b = solve_second_kind(&parse_field_expr("1", 3, rat(-11, 4)).map_err(err)?, 4, &w0, 10, None).map_err(err)?;
    ensure(b.field.to_string() == "r^(5/2)", format!("second kind gives {}", b.field))?;
    ensure(b.residual.is_zero(), "second-kind residual")?;
    let f0 = parse_field_expr("x1^4 + x2^3", 3, w0.clone()).map_err(err)?;
    let fb = parse_field_expr("x1^4 + x2^3", 3, rat(-11, 4)).map_err(err)?;
    for n in 0..=6usize {
        let s = solve_first_kind(&f0, 4, n).map_err(err)?;
        ensure(s.residual_order().map_or(true, |v| v >= int(n as i64)), format!("first kind N = {n}"))?;
        let s = solve_second_kind(&fb, 4, &w0, n, None).map_err(err)?;
        ensure(
            s.residual_order().map_or(true, |v| v >= &s.alpha + int(n as i64)),
            format!("second kind N = {n}"),
        )?;
    }
    Ok("x1^2 + 2*r^2 and r^(5/2) exact; truncations certify O(r^N) and O(r^(h0-1+N))".into())
}

fn obstruction_law() -> Outcome {
    let d = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let shape = SampleShape::new(3).boundary().x_degree(5).terms(5);
    let mut notes = Vec::new();
    for h0 in 2..=5i64 {
        let w0 = rat(h0 - d, 2);
        let mut multiples = Vec::new();
        for _ in 0..20 {
            let f0 = random_field(&mut rng, &shape, w0.clone());
            let p = obstruction(&f0, d).map_err(err)?;
            match solve_first_kind(&f0, d, 6) {
                Err(Error::Obstructed { ell, multiple, .. }) => {
                    ensure(ell as i64 == h0 - 2, format!("h0 = {h0}: fails at l = {ell}"))?;
                    multiples.push(multiple.ok_or("obstruction with vanishing P f0")?);
                }
                Ok(s) => {
                    ensure(p.is_zero(), format!("h0 = {h0}: no failure although P f0 = {p}"))?;
                    ensure(s.residual.is_zero(), "unobstructed solution has a residual")?;
                }
                Err(e) => return Err(err(e)),
            }
        }
        if multiples.is_empty() {
            notes.push(format!("h0={h0}: P_{} f0| = 0 identically, never obstructed", h0 - 1));
            continue;
        }
        let m0 = multiples[0].clone();
        ensure(multiples.iter().all(|m| m == &m0), format!("h0 = {h0}: multiples differ"))?;
        let f = factorial((h0 - 2) as u64);
        ensure(m0 == (&f * &f).recip(), format!("h0 = {h0}: multiple {m0}"))?;
        notes.push(format!(
            "h0={h0}: l={} multiple {m0} ({}/20 obstructed, rest have P f0| = 0)",
            h0 - 2,
            multiples.len()
        ));
    }
    Ok(notes.join("; "))
}

fn interior_dictionary() -> Outcome {
    let w0 = rat(-1, 4);
    let s = rat(11, 4);
    let a = solve_first_kind(&parse_field_expr("x1^2 + x2*x3", 3, w0.clone()).map_err(err)?, 4, 8).map_err(err)?;
    let fa = interior_scale_form(&a, &s).map_err(err)?;
    ensure(fa.certificate.holds, "normal form differs from I·D")?;
    ensure(fa.certificate.coefficient == fa.certificate.idotd_coefficient, "2s-n-1 != d+2w-2")?;
    ensure(fa.round_trip && fa.g_block.is_zero(), "first-kind round trip")?;
    let b = solve_second_kind(&parse_field_expr("x1 + 1", 3, rat(-11, 4)).map_err(err)?, 4, &w0, 8, None).map_err(err)?;
    let fb = interior_scale_form(&b, &s).map_err(err)?;
    ensure(fb.round_trip && fb.f_block.is_zero(), "second-kind round trip")?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let w = rat(rng.gen_range(-20..20), 6);
        let model = HalfSpace::new(rng.gen_range(3..7));
        let cert = sl2_boundary::model::normal_form_certificate(&model, &w);
        ensure(cert.holds && cert.coefficient == cert.idotd_coefficient, format!("certificate at w = {w}"))?;
    }
    Ok(format!("2s-n-1 = {} = d+2w-2, F and G round-trip", fa.certificate.coefficient))
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 9] = [
        (1, "K-series fidelity", 1, k_series_fidelity),
        (2, "H-series double derivation", 5, h_series_double_derivation),
        (3, "operator annihilation", 60, operator_annihilation),
        (4, "model sl(2)", 30, model_sl2),
        (5, "GJMS constants", 60, gjms_constants),
        (6, "Q-curvature", 120, q_curvature),
        (7, "exact-solution regression", 5, exact_solutions),
        (8, "obstruction law", 60, obstruction_law),
        (9, "interior-scale dictionary", 5, interior_dictionary),
    ];
    let mut failed = Vec::new();
    for (id, name, bound, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(bound);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time bound: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!(
            "[{status}] {id} {name}: {detail} ({:.2}s, bound {bound}s)",
            elapsed.as_secs_f64()
        );
        if status == "FAIL" {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
