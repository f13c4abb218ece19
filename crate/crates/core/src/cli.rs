//! Command-line front end: `build`, `invert`, `eigen`, `verify`.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 domain error
//! (bad modulus, singular matrix requested for inversion).

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gauss::spectrum;
use crate::linalg::Matrix;
use crate::output::{CommandEcho, OutputDocument, Payload};
use crate::trigmat::{build_matrix, explicit_inverse, hat_coefficients, Kind};
use crate::verify::{sweep, CheckKind, Summary, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cyclomat",
    version,
    about = "Sine/cosine matrices over units mod n: explicit inverses, Gauss-sum spectra, cross-checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Sine,
    Cosine,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Sine => Kind::Sine,
            KindArg::Cosine => Kind::Cosine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the sine or cosine matrix with (sign, index, value) entries.
    Build {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the explicit inverse, numerically or as exact coefficient tables.
    Invert {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Emit exact integer numerators over the denominator n.
        #[arg(long)]
        symbolic: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the eigenvalues as Gauss sums, labelled by character.
    Eigen {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the identity and oracle checks over a range of moduli.
    Verify {
        #[arg(long = "from", default_value_t = 3)]
        from: u64,
        #[arg(long = "to", default_value_t = 50)]
        to: u64,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_checks)]
        checks: CheckList,
        /// Tolerance overrides, e.g. `matrix=1e-7,identity=1e-9`, or one number for all.
        #[arg(long)]
        tol: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Report per-check wall time on stderr.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckList(pub Vec<CheckKind>);

fn parse_checks(s: &str) -> std::result::Result<CheckList, String> {
    CheckKind::parse_list(s).map(CheckList)
}

/// Result of one invocation: what goes to stdout and stderr, and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Execution {
    fn failure(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        stderr.push('\n');
        Execution {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

fn render(doc: &OutputDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Table => doc.to_table(),
        Format::Csv => doc.to_csv(),
    }
}

fn domain(e: Error) -> Execution {
    Execution::failure(EXIT_DOMAIN, format!("error: {e}"))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Execution {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Execution::failure(code, text.trim_end())
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Execution {
    match &cli.command {
        Command::Build { n, kind, format } => cmd_build(*n, (*kind).into(), *format),
        Command::Invert {
            n,
            kind,
            symbolic,
            format,
        } => cmd_invert(*n, (*kind).into(), *symbolic, *format),
        Command::Eigen { n, kind, format } => cmd_eigen(*n, (*kind).into(), *format),
        Command::Verify {
            from,
            to,
            checks,
            tol,
            format,
            timings,
        } => cmd_verify(*from, *to, &checks.0, tol.as_deref(), *format, *timings),
    }
}

fn echo(name: &str, n: u64, kind: Kind) -> CommandEcho {
    CommandEcho {
        name: name.into(),
        n: Some(n),
        kind: Some(kind),
        ..Default::default()
    }
}

pub fn cmd_build(n: u64, kind: Kind, format: Format) -> Execution {
    let m = match build_matrix(n, kind) {
        Ok(m) => m,
        Err(e) => return domain(e),
    };
    let doc = OutputDocument::new(echo("build", n, kind), Payload::matrix(&m));
    Execution {
        stdout: render(&doc, format),
        stderr: String::new(),
        code: EXIT_OK,
    }
}

pub fn cmd_invert(n: u64, kind: Kind, symbolic: bool, format: Format) -> Execution {
    let mut command = echo("invert", n, kind);
    command.symbolic = Some(symbolic);
    let payload = if symbolic {
        match hat_coefficients(n, kind) {
            Ok(h) => Payload::symbolic(&h),
            Err(e) => return domain(e),
        }
    } else {
        let inv = match explicit_inverse(n, kind) {
            Ok(inv) => inv,
            Err(e) => return domain(e),
        };
        let m = build_matrix(n, kind).expect("n validated above").values();
        let residual = m
            .matmul(&inv.values())
            .max_abs_diff(&Matrix::identity(m.rows()));
        Payload::inverse(&inv, residual)
    };
    let doc = OutputDocument::new(command, payload);
    Execution {
        stdout: render(&doc, format),
        stderr: String::new(),
        code: EXIT_OK,
    }
}

pub fn cmd_eigen(n: u64, kind: Kind, format: Format) -> Execution {
    let s = match spectrum(n, kind) {
        Ok(s) => s,
        Err(e) => return domain(e),
    };
    let doc = OutputDocument::new(echo("eigen", n, kind), Payload::spectrum(&s));
    Execution {
        stdout: render(&doc, format),
        stderr: String::new(),
        code: EXIT_OK,
    }
}

pub fn cmd_verify(
    from: u64,
    to: u64,
    checks: &[CheckKind],
    tol: Option<&str>,
    format: Format,
    timings: bool,
) -> Execution {
    if from < 3 || from > to {
        return Execution::failure(
            EXIT_USAGE,
            format!("error: need 3 <= --from <= --to, got --from {from} --to {to}"),
        );
    }
    let mut tolerances = Tolerances::default();
    if let Some(t) = tol {
        if let Err(e) = tolerances.apply_overrides(t) {
            return Execution::failure(EXIT_USAGE, format!("error: --tol: {e}"));
        }
    }
    let start = Instant::now();
    let reports = match sweep(from, to, checks, &tolerances) {
        Ok(r) => r,
        Err(e) => return domain(e),
    };
    let elapsed = start.elapsed();
    let summary = Summary::of(&reports);

    let mut stderr = String::new();
    if timings {
        for r in &reports {
            stderr.push_str(&format!(
                "{} n={} {}: {:.3} ms\n",
                r.check,
                r.modulus,
                r.variant.as_deref().unwrap_or("-"),
                r.elapsed_ms
            ));
        }
        stderr.push_str(&format!("total: {:.3} s\n", elapsed.as_secs_f64()));
    }

    let command = CommandEcho {
        name: "verify".into(),
        from: Some(from),
        to: Some(to),
        checks: Some(checks.to_vec()),
        tolerances: Some(tolerances),
        ..Default::default()
    };
    let doc = OutputDocument::new(command, Payload::verify(reports));
    Execution {
        stdout: render(&doc, format),
        stderr,
        code: if summary.all_passed() {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        },
    }
}
