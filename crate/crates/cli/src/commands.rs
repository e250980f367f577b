use serde::Serialize;
use serde_json::Value;

use sl2_boundary::arith::{parse_rational, to_i64, Rational};
use sl2_boundary::model::{
    gjms_constant, p_k_build, parse_field_expr, q_holographic, solve_first_kind, solve_log_density,
    solve_log_kind, solve_second_kind, DensityField, ExpansionSolution,
};
use sl2_boundary::series::{f_polynomial, g_series, h_series, k_series, FormalSeries};
use sl2_boundary::sl2::{parse_word, CanonicalForm, Engine, WordContext};
use sl2_boundary::{Error, Result, WeightParam};

use crate::report::{to_csv, to_json};
use crate::{suites, Command, Format, SeriesKind, SolveKind, Suite};

pub enum Produced {
    Payload(String),
    /// A payload with a pass/fail verdict.
    Certificate { text: String, passed: bool },
    Cases(Vec<crate::Case>),
}

pub fn parse_weight(text: &str) -> Result<WeightParam> {
    if text.trim() == "generic" {
        Ok(WeightParam::Generic)
    } else {
        parse_rational(text).map(WeightParam::Value)
    }
}

fn zero_field(n: usize) -> DensityField {
    DensityField::zero(n, Rational::from_integer(0.into()))
}

/// Scalars as `key: value` lines or two-column CSV; tables as they are.
fn render<T: Serialize>(payload: &T, format: Format, table: Option<(Vec<&str>, Vec<Vec<String>>)>) -> String {
    match (format, table) {
        (Format::Json, _) => to_json(payload),
        (Format::Csv, Some((h, rows))) => to_csv(&h, &rows),
        (Format::Text, Some((_, rows))) => rows.iter().map(|r| r.join("  ") + "\n").collect(),
        (f, None) => {
            let v = serde_json::to_value(payload).expect("payload serializes");
            let rows: Vec<Vec<String>> = match v {
                Value::Object(m) => m
                    .into_iter()
                    .map(|(k, v)| match v {
                        Value::String(s) => vec![k, s],
                        other => vec![k, other.to_string()],
                    })
                    .collect(),
                other => vec![vec!["value".into(), other.to_string()]],
            };
            if f == Format::Csv {
                to_csv(&["key", "value"], &rows)
            } else {
                rows.iter().map(|r| format!("{}: {}\n", r[0], r[1])).collect()
            }
        }
    }
}

pub fn dispatch(cmd: &Command, format: Format) -> Result<Produced> {
    match cmd {
        Command::Series { kind, h0, order } => series(*kind, h0, *order, format).map(Produced::Payload),
        Command::Algebra { word, h0, order, contraction } => {
            algebra(word, h0, *order, *contraction, format).map(Produced::Payload)
        }
        Command::Solve { kind, d, w0, f0, order, logtau, alpha } => solve(
            *kind,
            *d,
            w0.as_deref(),
            f0,
            *order,
            logtau.as_deref(),
            alpha.as_deref(),
            format,
        )
        .map(Produced::Payload),
        Command::Gjms { k, d, trials } => gjms(*k, *d, *trials, format),
        Command::Qcurv { n, omega } => qcurv(*n, omega, format).map(Produced::Payload),
        Command::Verify { suite } => Ok(Produced::Cases(verify(*suite)?)),
    }
}

pub fn verify(suite: Suite) -> Result<Vec<crate::Case>> {
    let mut cases = Vec::new();
    if matches!(suite, Suite::All | Suite::Sl2) {
        cases.extend(suites::sl2()?);
    }
    if matches!(suite, Suite::All | Suite::Series) {
        cases.extend(suites::series()?);
    }
    if matches!(suite, Suite::All | Suite::Model) {
        cases.extend(suites::model()?);
    }
    if matches!(suite, Suite::All | Suite::Logops) {
        cases.extend(suites::logops()?);
    }
    Ok(cases)
}

#[derive(Serialize)]
struct Coefficient {
    k: usize,
    value: String,
}

#[derive(Serialize)]
struct SeriesPayload {
    series: &'static str,
    h0: String,
    order: usize,
    coefficients: Vec<Coefficient>,
}

fn series(kind: SeriesKind, h0: &str, order: usize, format: Format) -> Result<String> {
    let w = parse_weight(h0)?;
    let (name, s): (&str, FormalSeries) = match kind {
        SeriesKind::K => ("K", k_series(&w, order)?),
        SeriesKind::G => ("G", g_series(&w, order)?),
        SeriesKind::H => ("H", h_series(&w, order)?),
        SeriesKind::F => {
            let v = w
                .value()
                .ok_or_else(|| Error::Domain("the F polynomial needs an integer h0 >= 2".into()))?;
            ("F", f_polynomial(v)?)
        }
    };
    let last = match kind {
        SeriesKind::F => s.order(),
        _ => order,
    };
    let coefficients: Vec<Coefficient> = (0..=last)
        .map(|k| Coefficient {
            k,
            value: s.coeff(k).to_string(),
        })
        .collect();
    let rows = coefficients
        .iter()
        .map(|c| vec![c.k.to_string(), c.value.clone()])
        .collect();
    let payload = SeriesPayload {
        series: name,
        h0: w.to_string(),
        order: last,
        coefficients,
    };
    Ok(render(&payload, format, Some((vec!["k", "value"], rows))))
}

#[derive(Serialize)]
struct AlgebraTerm {
    term: String,
    coefficient: String,
}

#[derive(Serialize)]
struct AlgebraPayload {
    word: String,
    h0: String,
    order: usize,
    contraction: bool,
    result: String,
    terms: Vec<AlgebraTerm>,
}

fn algebra(word: &str, h0: &str, order: usize, contraction: bool, format: Format) -> Result<String> {
    let weight = parse_weight(h0)?;
    let ctx = WordContext {
        weight: weight.clone(),
        order,
    };
    let expr = parse_word(word, &ctx)?;
    let engine = Engine::new(weight.clone()).with_contraction(contraction);
    let f = engine.section("f", &weight.as_ratfunc())?;
    let result: CanonicalForm = expr
        .apply(&engine, &CanonicalForm::section(f), order)?
        .truncate(order as i64);
    let terms: Vec<AlgebraTerm> = result
        .iter()
        .map(|(k, c)| AlgebraTerm {
            term: k.to_string(),
            coefficient: c.to_string(),
        })
        .collect();
    let rows = terms
        .iter()
        .map(|t| vec![t.term.clone(), t.coefficient.clone()])
        .collect();
    let payload = AlgebraPayload {
        word: word.to_string(),
        h0: weight.to_string(),
        order,
        contraction,
        result: result.to_string(),
        terms,
    };
    Ok(render(&payload, format, Some((vec!["term", "coefficient"], rows))))
}

#[derive(Serialize)]
struct SolveTerm {
    sigma_power: String,
    log: bool,
    field: String,
}

#[derive(Serialize)]
struct SolvePayload {
    kind: &'static str,
    d: i64,
    w0: String,
    #[serde(rename = "N")]
    n: usize,
    terms: Vec<SolveTerm>,
    /// Lowest `r` power of `I·D f`: an integer, `"p/q"`, or `"inf"` when the
    /// residual vanishes identically.
    residual_order: Value,
}

pub fn residual_order_value(sol: &ExpansionSolution) -> Value {
    match sol.residual_order() {
        None => Value::String("inf".into()),
        Some(v) => match to_i64(&v) {
            Some(i) => Value::from(i),
            None => Value::String(v.to_string()),
        },
    }
}

#[allow(clippy::too_many_arguments)]
fn solve(
    kind: SolveKind,
    d: i64,
    w0: Option<&str>,
    f0: &str,
    order: usize,
    logtau: Option<&str>,
    alpha: Option<&str>,
    format: Format,
) -> Result<String> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension d = {d} too small")));
    }
    let n = (d - 1) as usize;
    let zero = Rational::from_integer(0.into());
    let w0 = match (kind, w0) {
        (SolveKind::Logdensity, None) => zero.clone(),
        (SolveKind::Logdensity, Some(t)) => {
            let w = parse_rational(t)?;
            if w != zero {
                return Err(Error::Domain("a log density has weight 0".into()));
            }
            w
        }
        (_, Some(t)) => parse_rational(t)?,
        (_, None) => return Err(Error::Domain("--w0 is required".into())),
    };
    if alpha.is_some() && kind != SolveKind::Second {
        return Err(Error::Domain("--alpha applies to --kind second only".into()));
    }
    let log_tau = match logtau {
        Some(t) => parse_field_expr(t, n, zero.clone())?,
        None => zero_field(n),
    };
    let sol = match kind {
        SolveKind::First => solve_first_kind(&parse_field_expr(f0, n, w0.clone())?, d, order)?,
        SolveKind::Second => {
            let wbar = Rational::from_integer((1 - d).into()) - &w0;
            let a = alpha.map(parse_rational).transpose()?;
            let data_weight = match &a {
                Some(a) if a == &zero => w0.clone(),
                _ => wbar,
            };
            solve_second_kind(&parse_field_expr(f0, n, data_weight)?, d, &w0, order, a.as_ref())?
        }
        SolveKind::Log => solve_log_kind(&parse_field_expr(f0, n, w0.clone())?, d, order, &log_tau)?,
        SolveKind::Logdensity => solve_log_density(&parse_field_expr(f0, n, zero)?, d, order, &log_tau)?,
    };
    let terms: Vec<SolveTerm> = sol
        .terms()
        .into_iter()
        .map(|t| SolveTerm {
            sigma_power: t.sigma_power.to_string(),
            log: t.log,
            field: t.field.to_string(),
        })
        .collect();
    let rows = terms
        .iter()
        .map(|t| vec![t.sigma_power.clone(), t.log.to_string(), t.field.clone()])
        .collect();
    let payload = SolvePayload {
        kind: sol.kind.name(),
        d,
        w0: sol.w0.to_string(),
        n: order,
        terms,
        residual_order: residual_order_value(&sol),
    };
    Ok(render(&payload, format, Some((vec!["sigma_power", "log", "field"], rows))))
}

#[derive(Serialize)]
struct GjmsPayload {
    k: u32,
    d: i64,
    weight: String,
    tangential: bool,
    boundary_operator: String,
    zero_restriction: bool,
    constant: Option<String>,
    expected_abs: Option<String>,
    sign: i8,
    passes: bool,
}

fn gjms(k: u32, d: i64, trials: usize, format: Format) -> Result<Produced> {
    let p = p_k_build(k, d)?;
    let rep = gjms_constant(k, d, trials)?;
    let payload = GjmsPayload {
        k,
        d,
        weight: p.weight.to_string(),
        tangential: p.tangential,
        boundary_operator: rep.boundary_operator.to_string(),
        zero_restriction: rep.zero_restriction,
        constant: rep.constant.as_ref().map(|c| c.to_string()),
        expected_abs: rep.expected_abs.as_ref().map(|c| c.to_string()),
        sign: rep.sign(),
        passes: rep.passes() && p.tangential,
    };
    Ok(Produced::Certificate {
        passed: payload.passes,
        text: render(&payload, format, None),
    })
}

#[derive(Serialize)]
struct QPayload {
    n: usize,
    omega: String,
    q: String,
}

fn qcurv(n: usize, omega: &str, format: Format) -> Result<String> {
    let w = parse_field_expr(omega, n, Rational::from_integer(0.into()))?;
    let q = q_holographic(&w, n)?;
    let payload = QPayload {
        n,
        omega: w.to_string(),
        q: q.to_string(),
    };
    Ok(render(&payload, format, None))
}
