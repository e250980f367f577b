use serde::Serialize;

use crate::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case {
    pub name: String,
    pub expected: String,
    pub got: String,
    /// Kind of check: `identity`, `oracle`, `regression` or `measured`.
    pub provenance: String,
    pub pass: bool,
    /// Weight, order and first offending coefficient of a failed case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Case {
    pub fn new(name: impl Into<String>, provenance: &str, expected: impl Into<String>, got: impl Into<String>) -> Self {
        let expected = expected.into();
        let got = got.into();
        Case {
            name: name.into(),
            pass: expected == got,
            expected,
            got,
            provenance: provenance.to_string(),
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: Option<String>) -> Self {
        if !self.pass {
            self.witness = w;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub status: Status,
    pub cases: Vec<Case>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<f64>,
}

impl Report {
    /// Cases are sorted by name so that assembly order does not matter.
    pub fn from_cases(mut cases: Vec<Case>, timing: Option<f64>) -> Self {
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        let status = if cases.iter().all(|c| c.pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            status,
            cases,
            timing,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let rows = report
                .cases
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.expected.clone(),
                        c.got.clone(),
                        c.provenance.clone(),
                        if c.pass { "pass" } else { "fail" }.to_string(),
                        c.witness.clone().unwrap_or_default(),
                    ]
                })
                .collect::<Vec<_>>();
            to_csv(&["name", "expected", "got", "provenance", "status", "witness"], &rows)
        }
        Format::Text => {
            let mut out = String::new();
            for c in &report.cases {
                let mark = if c.pass { "pass" } else { "FAIL" };
                out.push_str(&format!("{mark} {}: expected {}, got {}", c.name, c.expected, c.got));
                if let Some(w) = &c.witness {
                    out.push_str(&format!(" [{w}]"));
                }
                out.push('\n');
            }
            let status = serde_json::to_value(report.status).expect("status serializes");
            out.push_str(&format!("status: {}\n", status.as_str().unwrap_or("?")));
            if let Some(t) = report.timing {
                out.push_str(&format!("timing: {t:.3}s\n"));
            }
            out
        }
    }
}

/// Compact JSON with a trailing newline. Keys follow the declared field
/// order of the payload type.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("payload serializes");
    s.push('\n');
    s
}

pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for r in rows {
        w.write_record(r).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}
