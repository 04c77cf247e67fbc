//! `fock-toeplitz`: command-line access to the Toeplitz calculus library.
//!
//! Data goes to stdout (or `--output`), diagnostics to stderr.
//! Exit codes: 0 success, 1 I/O failure, 2 usage or malformed input,
//! 3 accuracy failure, 4 domain or divergence error.

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fock_toeplitz::calculus::{diamond, heat_transform, wick_grid, wick_grid_csv};
use fock_toeplitz::composition::{audit_paper_example, classify_obstruction, compose_radial, DEFAULT_CASE_TOL};
use fock_toeplitz::fock::{spectrum_radial, toeplitz_matrix};
use fock_toeplitz::quadrature::{gamma_sequence, GammaMethod, GammaSequence, QuadratureOptions};
use fock_toeplitz::report::{format_f64, to_json_string, ComplexJson};
use fock_toeplitz::symbols::Symbol;

use config::{parse_complex, parse_symbol, parse_x_samples, ConfigFile, FlagOverrides, Format, RunConfig, UsageError};

#[derive(Parser)]
#[command(name = "fock-toeplitz", version)]
#[command(about = "Toeplitz operators on the Segal-Bargmann space: gamma sequences, truncations, composition")]
struct Cli {
    /// Truncation dimension N (prefix length of gamma sequences)
    #[arg(short = 'N', long = "truncation", global = true)]
    truncation: Option<usize>,

    /// Numerical tolerance (also read from FOCK_TOEPLITZ_TOL)
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Write data here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// JSON file with any of: truncation, tol, format, output, x_samples
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Comma-separated sample points for the A_f convergence check
    #[arg(long, global = true, value_parser = parse_x_samples)]
    x_samples: Option<Vec<f64>>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    ClosedForm,
    Quadrature,
}

#[derive(Subcommand)]
enum Command {
    /// Gamma sequence gamma(0..N) of a radial symbol
    Gamma {
        /// Symbol as JSON, or @path
        #[arg(long)]
        symbol: String,
        #[arg(long, value_enum, default_value = "closed-form")]
        method: MethodArg,
    },
    /// N x N Toeplitz truncation in the monomial basis
    Matrix {
        #[arg(long)]
        symbol: String,
    },
    /// Composition report for two radial symbols
    Compose {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    /// Diamond product of two polynomial symbols
    Diamond {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    /// Wick symbol of a radial operator on a radius grid
    Wick {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 2.0)]
        r_max: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
    },
    /// Heat transform H_t of a symbol
    Heat {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Distinct values of the gamma prefix of a radial symbol
    Spectrum {
        #[arg(long)]
        symbol: String,
    },
    /// Obstruction case for a Gaussian Wick parameter theta
    Classify {
        /// Complex number such as 1.28+0.96i
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Absolute tolerance for |theta|^2 = 2 Re theta
        #[arg(long, default_value_t = DEFAULT_CASE_TOL)]
        case_tol: f64,
    },
    /// Full audit of the e^{2(1+2i)/5 |z|^2} example
    VerifyPaperExample,
}

enum CliError {
    Usage(String),
    Lib(fock_toeplitz::Error),
    Io(String),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e.0)
    }
}

impl From<fock_toeplitz::Error> for CliError {
    fn from(e: fock_toeplitz::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Lib(e) if e.is_accuracy() => 3,
            CliError::Lib(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    to_json_string(value).map_err(|e| CliError::Io(format!("serialization failed: {e}")))
}

fn gamma_csv(g: &GammaSequence) -> String {
    let mut out = String::from("n,re,im,abs_err,reliable\n");
    for (n, v) in g.values.iter().enumerate() {
        out.push_str(&format!(
            "{n},{},{},{},{}\n",
            format_f64(v.re),
            format_f64(v.im),
            format_f64(g.abs_err[n]),
            g.reliable[n]
        ));
    }
    out
}

fn symbol_csv(s: &Symbol) -> Result<String, CliError> {
    let p = s
        .to_polynomial()
        .map_err(|_| CliError::Usage(format!("CSV output needs a polynomial symbol, got {s}")))?;
    let mut out = String::from("j,k,re,im\n");
    for ((j, k), c) in p.terms() {
        out.push_str(&format!("{j},{k},{},{}\n", format_f64(c.re), format_f64(c.im)));
    }
    Ok(out)
}

#[derive(Serialize)]
struct WickReport {
    symbol: Symbol,
    truncation: usize,
    points: Vec<WickPoint>,
}

#[derive(Serialize)]
struct WickPoint {
    r: f64,
    value: ComplexJson,
}

fn run(cli: Cli) -> Result<String, CliError> {
    let file = cli.config.as_deref().map(ConfigFile::load).transpose()?;
    let env_tol = std::env::var(config::TOL_ENV).ok();
    let cfg = config::resolve(
        file,
        env_tol.as_deref(),
        FlagOverrides {
            truncation: cli.truncation,
            tol: cli.tol,
            format: cli.format,
            output: cli.output,
            x_samples: cli.x_samples,
        },
    )?;
    let body = execute(&cli.command, &cfg)?;
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, &body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn execute(command: &Command, cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.truncation;
    let csv = cfg.format == Format::Csv;
    match command {
        Command::Gamma { symbol, method } => {
            let s = parse_symbol(symbol)?;
            let method = match method {
                MethodArg::ClosedForm => GammaMethod::ClosedForm,
                MethodArg::Quadrature => GammaMethod::Quadrature,
            };
            let g = gamma_sequence(&s, n, method, QuadratureOptions::with_tol(cfg.tol))?;
            if csv {
                Ok(gamma_csv(&g))
            } else {
                json(&g)
            }
        }
        Command::Matrix { symbol } => {
            let m = toeplitz_matrix(&parse_symbol(symbol)?, n)?;
            if csv {
                Ok(m.to_csv())
            } else {
                json(&m.to_json())
            }
        }
        Command::Compose { phi, psi } => {
            let report = compose_radial(&parse_symbol(phi)?, &parse_symbol(psi)?, n, &cfg.x_samples, cfg.tol)?;
            if csv {
                Ok(gamma_csv(&report.gamma_tau))
            } else {
                json(&report)
            }
        }
        Command::Diamond { phi, psi } => {
            let d = diamond(&parse_symbol(phi)?, &parse_symbol(psi)?)?;
            if csv {
                symbol_csv(&d)
            } else {
                json(&d)
            }
        }
        Command::Wick { symbol, r_max, points } => {
            if !(*r_max >= 0.0 && r_max.is_finite()) {
                return Err(CliError::Usage(format!("--r-max must be finite and >= 0, got {r_max}")));
            }
            let s = parse_symbol(symbol)?;
            let g = gamma_sequence(&s, n, GammaMethod::ClosedForm, QuadratureOptions::with_tol(cfg.tol))?;
            let grid = wick_grid(&g, *r_max, *points, cfg.tol)?;
            if csv {
                Ok(wick_grid_csv(&grid))
            } else {
                json(&WickReport {
                    symbol: s,
                    truncation: n,
                    points: grid
                        .into_iter()
                        .map(|(r, v)| WickPoint { r, value: v.into() })
                        .collect(),
                })
            }
        }
        Command::Heat { symbol, t } => {
            let h = heat_transform(&parse_symbol(symbol)?, *t)?;
            if csv {
                symbol_csv(&h)
            } else {
                json(&h)
            }
        }
        Command::Spectrum { symbol } => {
            let s = parse_symbol(symbol)?;
            let g = gamma_sequence(&s, n, GammaMethod::ClosedForm, QuadratureOptions::with_tol(cfg.tol))?;
            let spec = spectrum_radial(&g, cfg.tol);
            if csv {
                let mut out = String::from("re,im,multiplicity\n");
                for (p, m) in spec.points.iter().zip(&spec.multiplicities) {
                    out.push_str(&format!("{},{},{m}\n", format_f64(p.re), format_f64(p.im)));
                }
                Ok(out)
            } else {
                json(&spec)
            }
        }
        Command::Classify { theta, case_tol } => {
            let theta = parse_complex(theta)?;
            if case_tol.is_nan() || *case_tol < 0.0 {
                return Err(CliError::Usage(format!("--case-tol must be >= 0, got {case_tol}")));
            }
            let v = classify_obstruction(theta, *case_tol);
            if csv {
                Ok(format!(
                    "theta_re,theta_im,case,margin\n{},{},{:?},{}\n",
                    format_f64(theta.re),
                    format_f64(theta.im),
                    v.case,
                    format_f64(v.margin)
                ))
            } else {
                json(&v)
            }
        }
        Command::VerifyPaperExample => {
            let audit = audit_paper_example(n, cfg.tol)?;
            eprintln!(
                "hypotheses (prefix-based): all hold = {}; obstruction on fitted K = {}: {:?}",
                audit.hypotheses_all_hold, audit.fit.k, audit.obstruction.case
            );
            if csv {
                let rows = [
                    ("quadrature_max_abs_error", format_f64(audit.gamma.quadrature_max_abs_error)),
                    ("quadrature_accurate_prefix", audit.gamma.quadrature_accurate_prefix.to_string()),
                    ("unit_modulus_defect", format_f64(audit.gamma.unit_modulus_defect)),
                    ("k_re", format_f64(audit.fit.k.re)),
                    ("k_im", format_f64(audit.fit.k.im)),
                    ("k_abs_sq", format_f64(audit.fit.k_abs_sq)),
                    ("two_re_k", format_f64(audit.fit.two_re_k)),
                    ("obstruction", format!("{:?}", audit.obstruction.case)),
                    ("hypotheses_all_hold", audit.hypotheses_all_hold.to_string()),
                ];
                let mut out = String::from("quantity,value\n");
                for (k, v) in rows {
                    out.push_str(&format!("{k},{v}\n"));
                }
                Ok(out)
            } else {
                json(&audit)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(body) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fock-toeplitz: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
