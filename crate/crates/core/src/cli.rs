//! The `sharpcert` command line. Exit codes: 0 success, 1 a mathematical
//! check failed, 2 usage or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certificate::{
    build_certificate, check_certificate, parse_certificate, render_certificate, sharp_constant,
    spectrum_closed_form, OutputFormat,
};
use crate::error::Error;
use crate::exact_arith::{QuadExt, Rational};
use crate::minors::{leading_minors, minor_polynomial, sylvester_positive_definite};
use crate::oracle::{
    evaluate_ratio, grid_oracle, numeric_eigenvalues, phi_f64, random_search_with, sample_trial,
    default_tolerance, RealVector, SearchOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping search parallelism.
pub const THREADS_ENV: &str = "SHARPCERT_THREADS";

/// Largest dimension for which `minors` also interpolates the polynomial.
const POLYNOMIAL_MAX_P: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "sharpcert", version, about = "Certify the sharp constant (1+sqrt(p))/2 in |x|_1 |x|_inf <= C |x|_2^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Machine,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Machine => OutputFormat::Machine,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an exact sharpness certificate for dimension p.
    Certify {
        #[arg(long)]
        p: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Independently verify a certificate file.
    Verify {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Leading principal minors D_k(C), k = 1..p (C defaults to the sharp constant).
    Minors {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        c: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form and numeric spectrum of Q_p(C).
    Eigen {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        c: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the norm ratio of a vector against the sharp bound.
    Check {
        /// Comma-separated decimals.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        tolerance: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized falsification search with hill-climbing refinement.
    Search {
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write every raw sample, one space-separated line per trial.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Maximize the ratio over vectors (1, t, ..., t) on a grid.
    Oracle {
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = 100_000)]
        resolution: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

fn dimension(p: i64, min: usize) -> std::result::Result<usize, Failure> {
    usize::try_from(p)
        .ok()
        .filter(|&v| v >= min)
        .ok_or_else(|| Failure::Usage(format!("--p must be at least {min}, got {p}")))
}

/// `--c` accepts the exact grammar (`3/2`, `1/2 + 1/2*sqrt(2)`) or a decimal,
/// which is taken as the exact dyadic value of the nearest double.
fn parse_parameter(text: &str) -> std::result::Result<QuadExt, Failure> {
    if let Ok(q) = text.trim().parse::<QuadExt>() {
        return Ok(q);
    }
    Rational::parse_exact_or_decimal(text)
        .map(QuadExt::from_rational)
        .map_err(|e| Failure::Usage(format!("--c: {e}")))
}

fn parameter_or_phi(c: Option<&str>, p: usize) -> std::result::Result<QuadExt, Failure> {
    let value = match c {
        Some(text) => parse_parameter(text)?,
        None => sharp_constant(p)?,
    };
    let field = sharp_constant(p)?;
    let same_field = !field.is_rational() && value.radicand() == field.radicand();
    if !value.is_rational() && !same_field {
        return Err(Failure::Usage(format!(
            "--c = {value} does not lie in Q(sqrt({p}))"
        )));
    }
    Ok(value)
}

fn line(out: &mut String, format: OutputFormat, key: &str, value: impl std::fmt::Display) {
    out.push_str(key);
    out.push_str(format.separator());
    out.push_str(&value.to_string());
    out.push('\n');
}

fn certify(p: i64, format: OutputFormat) -> Outcome {
    let p = dimension(p, 1)?;
    if p == 1 {
        return Ok("p=1: equality for all x; constant 1\n".to_string());
    }
    let cert = build_certificate(p).map_err(|e| Failure::Check(e.to_string()))?;
    Ok(render_certificate(&cert, format))
}

fn verify(path: &PathBuf, format: OutputFormat) -> Outcome {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let cert = parse_certificate(&text)?;
    match check_certificate(&cert) {
        Ok(()) => {
            let mut out = String::new();
            line(&mut out, format, "status", "verified");
            line(&mut out, format, "dimension", cert.dimension);
            line(&mut out, format, "sharp_constant", &cert.sharp_constant);
            Ok(out)
        }
        Err(Error::IdentityViolation(identity)) => Err(Failure::Check(format!(
            "verification failed: {identity}"
        ))),
        Err(e) => Err(Failure::Check(format!("verification failed: {e}"))),
    }
}

fn minors(p: i64, c: Option<&str>, format: OutputFormat) -> Outcome {
    let p = dimension(p, 1)?;
    let c = parameter_or_phi(c, p)?;
    let values = leading_minors(p, &c)?;
    let mut out = String::new();
    line(&mut out, format, "p", p);
    line(&mut out, format, "C", &c);
    for (k, v) in values.iter().enumerate() {
        let sign = match v.signum() {
            std::cmp::Ordering::Less => "-",
            std::cmp::Ordering::Equal => "0",
            std::cmp::Ordering::Greater => "+",
        };
        match format {
            OutputFormat::Text => line(&mut out, format, &format!("D_{}", k + 1), format!("{v}  [{sign}]")),
            OutputFormat::Machine => line(&mut out, format, &format!("D_{}", k + 1), v),
        }
    }
    if p <= POLYNOMIAL_MAX_P {
        line(&mut out, format, "D_p(C)", minor_polynomial(p)?);
    }
    line(&mut out, format, "positive_definite", sylvester_positive_definite(p, &c)?);
    Ok(out)
}

fn join_f64(xs: &[f64], format: OutputFormat) -> String {
    xs.iter()
        .map(|x| match format {
            OutputFormat::Text => format!("{x:.12}"),
            OutputFormat::Machine => format!("{x:?}"),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn eigen(p: i64, c: Option<&str>, format: OutputFormat) -> Outcome {
    let p = dimension(p, 1)?;
    let c = parameter_or_phi(c, p)?;
    let mut out = String::new();
    line(&mut out, format, "p", p);
    line(&mut out, format, "C", &c);
    if p >= 2 {
        let spectrum = spectrum_closed_form(p, &c)?;
        let text = spectrum
            .iter()
            .map(|e| format!("{} x{}", e.eigenvalue, e.multiplicity))
            .collect::<Vec<_>>()
            .join(", ");
        line(&mut out, format, "closed_form", text);
    } else {
        line(&mut out, format, "closed_form", format!("{} x1", &c - &QuadExt::one()));
    }
    let numeric = numeric_eigenvalues(p, c.to_f64())?;
    line(&mut out, format, "numeric", join_f64(&numeric, format));
    Ok(out)
}

fn check(vector: &str, tolerance: Option<f64>, format: OutputFormat) -> Outcome {
    let coords = vector
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Usage(format!("--vector: invalid number {s:?}")))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let x = RealVector::new(coords)?;
    let p = x.len();
    let ratio = evaluate_ratio(&x)?;
    let bound = phi_f64(p)?;
    let tol = tolerance.unwrap_or_else(|| default_tolerance(p));
    if !tol.is_finite() {
        return Err(Failure::Usage("--tolerance must be finite".into()));
    }
    let mut out = String::new();
    line(&mut out, format, "p", p);
    line(&mut out, format, "ratio", format!("{ratio:?}"));
    line(&mut out, format, "bound", format!("{bound:?}"));
    line(&mut out, format, "gap", format!("{:?}", bound - ratio));
    let holds = ratio <= bound + tol;
    line(&mut out, format, "holds", holds);
    if holds {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn threads_from_env() -> std::result::Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .map(Some)
            .ok_or_else(|| Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
    }
}

fn search(p: i64, trials: u64, seed: u64, dump: Option<&PathBuf>, format: OutputFormat) -> Outcome {
    let p = dimension(p, 1)?;
    if trials < 1 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let threads = threads_from_env()?;
    let report = random_search_with(p, trials, seed, SearchOptions { threads })?;
    if let Some(path) = dump {
        let mut file = std::io::BufWriter::new(
            fs::File::create(path).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?,
        );
        for index in 0..trials {
            let x = sample_trial(p, seed, index);
            let row = x.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(" ");
            writeln!(file, "{row}").map_err(|e| Failure::Usage(format!("dump: {e}")))?;
        }
    }
    Ok(report.render(format))
}

fn oracle(p: i64, resolution: usize, format: OutputFormat) -> Outcome {
    let p = dimension(p, 2)?;
    if resolution < 2 {
        return Err(Failure::Usage("--resolution must be at least 2".into()));
    }
    let found = grid_oracle(p, resolution)?;
    let phi = phi_f64(p)?;
    let t_star = 1.0 / (2.0 * phi);
    let mut out = String::new();
    line(&mut out, format, "p", p);
    line(&mut out, format, "resolution", resolution);
    line(&mut out, format, "max", format!("{:?}", found.value));
    line(&mut out, format, "argmax", format!("{:?}", found.argmax));
    line(&mut out, format, "phi", format!("{phi:?}"));
    line(&mut out, format, "t_star", format!("{t_star:?}"));
    line(&mut out, format, "gap", format!("{:?}", phi - found.value));
    Ok(out)
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("stdout: {e}"))),
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let (result, common) = match &cli.command {
        Command::Certify { p, common } => (certify(*p, common.format.into()), common),
        Command::Verify { path, common } => (verify(path, common.format.into()), common),
        Command::Minors { p, c, common } => (minors(*p, c.as_deref(), common.format.into()), common),
        Command::Eigen { p, c, common } => (eigen(*p, c.as_deref(), common.format.into()), common),
        Command::Check { vector, tolerance, common } => {
            (check(vector, *tolerance, common.format.into()), common)
        }
        Command::Search { p, trials, seed, dump, common } => {
            (search(*p, *trials, *seed, dump.as_ref(), common.format.into()), common)
        }
        Command::Oracle { p, resolution, common } => {
            (oracle(*p, *resolution, common.format.into()), common)
        }
    };
    match result {
        Ok(text) => match emit(stdout, common.out.as_ref(), &text) {
            Ok(()) => EXIT_OK,
            Err(Failure::Usage(msg) | Failure::Check(msg)) => {
                let _ = writeln!(stderr, "error: {msg}");
                EXIT_USAGE
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = stdout.write_all(msg.as_bytes());
            if !msg.ends_with('\n') {
                let _ = writeln!(stdout);
            }
            EXIT_CHECK_FAILED
        }
    }
}
