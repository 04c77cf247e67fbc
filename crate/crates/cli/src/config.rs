use std::fmt;
use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use serde::Deserialize;

use fock_toeplitz::symbols::Symbol;

pub const TOL_ENV: &str = "FOCK_TOEPLITZ_TOL";
pub const DEFAULT_TRUNCATION: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_X_SAMPLES: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Usage-level failure: bad flags, config or symbol JSON. Exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub truncation: usize,
    pub tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub x_samples: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            truncation: DEFAULT_TRUNCATION,
            tol: DEFAULT_TOL,
            format: Format::Json,
            output: None,
            x_samples: DEFAULT_X_SAMPLES.to_vec(),
        }
    }
}

/// Contents of a `--config` file. Every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub truncation: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub x_samples: Option<Vec<f64>>,
}

/// Values given on the command line.
#[derive(Debug, Default, Clone)]
pub struct FlagOverrides {
    pub truncation: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub x_samples: Option<Vec<f64>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| UsageError(format!("malformed config {}: {e}", path.display())))
    }
}

/// Layers defaults, config file, `FOCK_TOEPLITZ_TOL` and flags, in that order.
pub fn resolve(
    file: Option<ConfigFile>,
    env_tol: Option<&str>,
    flags: FlagOverrides,
) -> Result<RunConfig, UsageError> {
    let mut cfg = RunConfig::default();
    if let Some(f) = file {
        if let Some(n) = f.truncation {
            cfg.truncation = n;
        }
        if let Some(t) = f.tol {
            cfg.tol = t;
        }
        if let Some(fmt) = f.format {
            cfg.format = fmt;
        }
        if f.output.is_some() {
            cfg.output = f.output;
        }
        if let Some(x) = f.x_samples {
            cfg.x_samples = x;
        }
    }
    if let Some(raw) = env_tol {
        cfg.tol = raw
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("{TOL_ENV} is not a number: {raw:?}")))?;
    }
    if let Some(n) = flags.truncation {
        cfg.truncation = n;
    }
    if let Some(t) = flags.tol {
        cfg.tol = t;
    }
    if let Some(fmt) = flags.format {
        cfg.format = fmt;
    }
    if flags.output.is_some() {
        cfg.output = flags.output;
    }
    if let Some(x) = flags.x_samples {
        cfg.x_samples = x;
    }
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<(), UsageError> {
    if cfg.truncation < 2 {
        return Err(UsageError(format!("truncation must be >= 2, got {}", cfg.truncation)));
    }
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return Err(UsageError(format!("tol must be finite and > 0, got {}", cfg.tol)));
    }
    if cfg.x_samples.is_empty() || cfg.x_samples.iter().any(|x| !(*x >= 0.0 && x.is_finite())) {
        return Err(UsageError("x-samples must be a non-empty list of finite values >= 0".to_string()));
    }
    Ok(())
}

/// Inline JSON, or `@path` to read it from a file.
pub fn parse_symbol(arg: &str) -> Result<Symbol, UsageError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| UsageError(format!("malformed symbol JSON: {e}")))
}

/// `a+bi`, `a-bi`, `a`, `bi`, `i`, with optional spaces and exponents.
pub fn parse_complex(raw: &str) -> Result<C64, UsageError> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || UsageError(format!("cannot parse complex number {raw:?}; expected a+bi"));
    let num = |t: &str| -> Result<f64, UsageError> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| bad())?;
            Ok(C64::new(re, num(&body[i..])?))
        }
        None => Ok(C64::new(0.0, num(body)?)),
    }
}

pub fn parse_x_samples(raw: &str) -> Result<Vec<f64>, String> {
    raw.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
        .collect()
}
