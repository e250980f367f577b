//! `sl2bc`: series tables, word reduction, boundary solutions, GJMS and
//! Q-curvature extraction, and verification suites, with JSON, CSV or
//! text output.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sl2_boundary::Error;

mod commands;
pub mod report;
mod suites;

pub use report::{emit_report, Case, Report, Status};

/// Environment variable overriding the default truncation order.
pub const ORDER_ENV: &str = "SL2BC_ORDER";
pub const DEFAULT_ORDER: usize = 10;
/// Orders above this print a coefficient-growth warning.
pub const ORDER_WARN: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "sl2bc", version, about = "Exact sl(2) boundary calculus")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Omit timing so that repeated runs give identical bytes.
    #[arg(long, global = true)]
    pub deterministic: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    #[value(name = "K")]
    K,
    #[value(name = "G")]
    G,
    #[value(name = "F")]
    F,
    #[value(name = "H")]
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveKind {
    First,
    Second,
    Log,
    Logdensity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Sl2,
    Series,
    Model,
    Logops,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of K, G = K at 2 - h0, the F polynomial or H.
    Series {
        #[arg(long, value_enum)]
        kind: SeriesKind,
        /// `generic` or a rational `p/q`.
        #[arg(long, default_value = "generic", allow_hyphen_values = true)]
        h0: String,
        #[arg(long, env = ORDER_ENV, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Normal-order a word acting on a section `f` with `h f = h0 f`.
    Algebra {
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "generic", allow_hyphen_values = true)]
        h0: String,
        #[arg(long, env = ORDER_ENV, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Drop `[x, y] = h` (the `I^2 = 0` case).
        #[arg(long)]
        contraction: bool,
    },
    /// Boundary expansion of a solution of `I·D f = 0` in the half-space.
    Solve {
        #[arg(long, value_enum)]
        kind: SolveKind,
        #[arg(long)]
        d: i64,
        /// Weight of the solution; fixed to 0 for `logdensity`.
        #[arg(long, allow_hyphen_values = true)]
        w0: Option<String>,
        /// Boundary data (`fbar0` for `second`, `u0` for `logdensity`).
        #[arg(long, allow_hyphen_values = true)]
        f0: String,
        #[arg(long, env = ORDER_ENV, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Function part of `log tau`.
        #[arg(long, allow_hyphen_values = true)]
        logtau: Option<String>,
        /// Requested leading exponent for `second`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// The operator `y^k` at weight `(k - n)/2` and its boundary constant.
    Gjms {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: i64,
        /// Random boundary polynomials tested besides the monomials.
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Holographic Q-curvature of `e^{-2 omega} delta` on `R^n`.
    Qcurv {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Malformed(_) => EXIT_PARSE,
        Error::Pole { .. }
        | Error::Domain(_)
        | Error::WeightMismatch { .. }
        | Error::NoSolution(_)
        | Error::Obstructed { .. } => EXIT_DOMAIN,
        Error::OrderMismatch { .. } | Error::Internal(_) => EXIT_INTERNAL,
    }
}

#[derive(Serialize)]
struct ErrorPayload<'a> {
    status: &'static str,
    code: i32,
    kind: &'a str,
    message: String,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } | Error::Malformed(_) => "parse",
        Error::Obstructed { .. } => "obstructed",
        Error::Pole { .. } => "exceptional_weight",
        Error::Internal(_) | Error::OrderMismatch { .. } => "internal",
        _ => "domain",
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut stderr = String::new();
    if let Some(order) = command_order(&cli.command) {
        if order > ORDER_WARN {
            stderr.push_str(&format!(
                "warning: order {order} > {ORDER_WARN}; exact coefficients grow quickly\n"
            ));
        }
    }
    let start = Instant::now();
    match commands::dispatch(&cli.command, cli.format) {
        Ok(commands::Produced::Payload(stdout)) => Outcome { code: 0, stdout, stderr },
        Ok(commands::Produced::Certificate { text, passed }) => Outcome {
            code: if passed { 0 } else { EXIT_FAIL },
            stdout: text,
            stderr,
        },
        Ok(commands::Produced::Cases(cases)) => {
            let timing = (!cli.deterministic).then(|| start.elapsed().as_secs_f64());
            let report = Report::from_cases(cases, timing);
            Outcome {
                code: if report.passed() { 0 } else { EXIT_FAIL },
                stdout: emit_report(&report, cli.format),
                stderr,
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let payload = ErrorPayload {
                status: "error",
                code,
                kind: error_kind(&e),
                message: e.to_string(),
            };
            stderr.push_str(&report::to_json(&payload));
            Outcome { code, stdout: String::new(), stderr }
        }
    }
}

fn command_order(c: &Command) -> Option<usize> {
    match c {
        Command::Series { order, .. } | Command::Algebra { order, .. } | Command::Solve { order, .. } => {
            Some(*order)
        }
        _ => None,
    }
}
