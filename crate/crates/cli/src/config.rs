//! Line-oriented experiment configuration.
//!
//! The format is `key = value`, one per line; `#` starts a comment. Scalars
//! use the library text syntax (`a/b`, `a/b+c/d*i`, `i`). Factor lines
//! repeat, one per tensor factor, with three comma-separated scalars:
//!
//! ```text
//! # one Omega and one Gamma factor over the trivial slot
//! m1 = 1
//! m2 = 1
//! omega = 2, 3, 1        # lambda, sigma, eta
//! gamma = 5, 1/2, -1
//! v = trivial
//! suite = all
//! seed = 42
//! degree_bound = 2
//! gen_bound = 4
//! sample_count = 10
//! ```
//!
//! `m1`/`m2` may be omitted, in which case they are inferred from the
//! factor lines; when present they must match. Repeated lambdas are legal
//! (they exercise the reducible path) and merely recorded.

use pgca::rank1::{ModuleKind, ModuleParams};
use pgca::tensor::{TensorShape, TrivialModule};
use pgca::Scalar;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError {
        line,
        column,
        message: message.into(),
    })
}

/// The suites the runner knows, in their fixed execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    Det,
    Dg,
    Generation,
    Recover,
    Simplicity,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Axioms,
        Suite::Det,
        Suite::Dg,
        Suite::Generation,
        Suite::Recover,
        Suite::Simplicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Det => "det",
            Suite::Dg => "dg",
            Suite::Generation => "generation",
            Suite::Recover => "recover",
            Suite::Simplicity => "simplicity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// `all` or a single suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelector {
    All,
    One(Suite),
}

impl FromStr for SuiteSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(SuiteSelector::All),
            "axioms" => Ok(SuiteSelector::One(Suite::Axioms)),
            "det" => Ok(SuiteSelector::One(Suite::Det)),
            "dg" => Ok(SuiteSelector::One(Suite::Dg)),
            "generation" => Ok(SuiteSelector::One(Suite::Generation)),
            "recover" => Ok(SuiteSelector::One(Suite::Recover)),
            "simplicity" => Ok(SuiteSelector::One(Suite::Simplicity)),
            other => Err(format!(
                "unknown suite '{other}' (expected axioms|det|dg|generation|recover|simplicity|all)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Structured,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "structured" => Ok(ReportFormat::Structured),
            other => Err(format!("unknown format '{other}' (expected text|structured)")),
        }
    }
}

/// A parsed and validated experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub shape: Arc<TensorShape>,
    pub suite: SuiteSelector,
    pub seed: u64,
    pub degree_bound: u32,
    pub gen_bound: u32,
    pub sample_count: usize,
    pub format: ReportFormat,
}

fn parse_scalar_field(
    line: usize,
    column: usize,
    text: &str,
    what: &str,
) -> Result<Scalar, ConfigError> {
    text.parse::<Scalar>()
        .map_err(|e| ConfigError {
            line,
            column: column + e.offset,
            message: format!("invalid {what}: {}", e.message),
        })
}

/// Parse the line-oriented text form. Reports the first error with its
/// line and column (1-based).
pub fn parse_config(input: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut m1: Option<usize> = None;
    let mut m2: Option<usize> = None;
    let mut omegas: Vec<(usize, ModuleParams)> = Vec::new();
    let mut gammas: Vec<(usize, ModuleParams)> = Vec::new();
    let mut v_selector: Option<String> = None;
    let mut suite = SuiteSelector::All;
    let mut seed = 0u64;
    let mut degree_bound = 2u32;
    let mut gen_bound = 4u32;
    let mut sample_count = 10usize;
    let mut format = ReportFormat::Text;

    for (idx, raw_line) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return err(lineno, 1, "expected 'key = value'");
        };
        let key = line[..eq].trim();
        let value = line[eq + 1..].trim();
        let value_col = eq + 2;
        if value.is_empty() {
            return err(lineno, value_col, format!("empty value for '{key}'"));
        }
        match key {
            "m1" | "m2" => {
                let parsed: usize = value
                    .parse()
                    .map_err(|_| ConfigError {
                        line: lineno,
                        column: value_col,
                        message: format!("invalid {key}: expected a nonnegative integer"),
                    })?;
                if key == "m1" {
                    m1 = Some(parsed);
                } else {
                    m2 = Some(parsed);
                }
            }
            "omega" | "gamma" => {
                let parts: Vec<&str> = value.split(',').collect();
                if parts.len() != 3 {
                    return err(
                        lineno,
                        value_col,
                        format!("{key} needs three comma-separated scalars: lambda, sigma, eta"),
                    );
                }
                let lambda = parse_scalar_field(lineno, value_col, parts[0], "lambda")?;
                let sigma = parse_scalar_field(lineno, value_col, parts[1], "sigma")?;
                let eta = parse_scalar_field(lineno, value_col, parts[2], "eta")?;
                let kind = if key == "omega" {
                    ModuleKind::Omega
                } else {
                    ModuleKind::Gamma
                };
                let params = ModuleParams::new(kind, lambda, sigma, eta).map_err(|e| {
                    ConfigError {
                        line: lineno,
                        column: value_col,
                        message: e.to_string(),
                    }
                })?;
                if kind == ModuleKind::Omega {
                    omegas.push((lineno, params));
                } else {
                    gammas.push((lineno, params));
                }
            }
            "v" => {
                if value != "trivial" {
                    return err(
                        lineno,
                        value_col,
                        format!("unknown restricted module '{value}' (only 'trivial' is built in)"),
                    );
                }
                v_selector = Some(value.to_string());
            }
            "suite" => {
                suite = value.parse().map_err(|e: String| ConfigError {
                    line: lineno,
                    column: value_col,
                    message: e,
                })?;
            }
            "seed" => {
                seed = value.parse().map_err(|_| ConfigError {
                    line: lineno,
                    column: value_col,
                    message: "invalid seed: expected an unsigned 64-bit integer".to_string(),
                })?;
            }
            "degree_bound" => {
                degree_bound = value.parse().map_err(|_| ConfigError {
                    line: lineno,
                    column: value_col,
                    message: "invalid degree_bound: expected a nonnegative integer".to_string(),
                })?;
            }
            "gen_bound" => {
                gen_bound = value.parse().map_err(|_| ConfigError {
                    line: lineno,
                    column: value_col,
                    message: "invalid gen_bound: expected a nonnegative integer".to_string(),
                })?;
            }
            "sample_count" => {
                sample_count = value.parse().map_err(|_| ConfigError {
                    line: lineno,
                    column: value_col,
                    message: "invalid sample_count: expected a positive integer".to_string(),
                })?;
                if sample_count == 0 {
                    return err(lineno, value_col, "sample_count must be positive");
                }
            }
            "format" => {
                format = value.parse().map_err(|e: String| ConfigError {
                    line: lineno,
                    column: value_col,
                    message: e,
                })?;
            }
            other => {
                return err(lineno, 1, format!("unknown key '{other}'"));
            }
        }
    }

    if let Some(expected) = m1 {
        if omegas.len() != expected {
            return err(
                omegas.last().map_or(1, |(l, _)| *l),
                1,
                format!("m1 = {expected} but {} omega factor(s) given", omegas.len()),
            );
        }
    }
    if let Some(expected) = m2 {
        if gammas.len() != expected {
            return err(
                gammas.last().map_or(1, |(l, _)| *l),
                1,
                format!("m2 = {expected} but {} gamma factor(s) given", gammas.len()),
            );
        }
    }
    let _ = v_selector; // only the trivial module exists; presence already validated

    let params: Vec<ModuleParams> = omegas
        .into_iter()
        .map(|(_, p)| p)
        .chain(gammas.into_iter().map(|(_, p)| p))
        .collect();
    let shape = TensorShape::new(params, Arc::new(TrivialModule)).map_err(|e| ConfigError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })?;

    Ok(ExperimentConfig {
        shape,
        suite,
        seed,
        degree_bound,
        gen_bound,
        sample_count,
        format,
    })
}
