//! Verification reports: assembly, text rendering, and a structured
//! tab-separated form that parses back losslessly.
//!
//! Output is deterministic byte for byte: checks appear in the fixed suite
//! order, all content derives from the config and seed, and nothing
//! time- or environment-dependent is recorded.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for CheckStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PASS" => Ok(CheckStatus::Pass),
            "FAIL" => Ok(CheckStatus::Fail),
            "INCONCLUSIVE" => Ok(CheckStatus::Inconclusive),
            other => Err(format!("unknown status '{other}'")),
        }
    }
}

/// One verified statement: the claim it checks and what happened.
/// On failure `detail` carries the counterexample data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
    pub claim: String,
    pub detail: String,
}

impl CheckLine {
    pub fn new(
        name: impl Into<String>,
        status: CheckStatus,
        claim: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        // structured fields are tab-separated; keep content one-line
        let clean = |s: String| s.replace(['\t', '\n'], " ");
        CheckLine {
            name: clean(name.into()),
            status,
            claim: clean(claim.into()),
            detail: clean(detail.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub shape: String,
    pub degree_bound: u32,
    pub gen_bound: u32,
    pub sample_count: usize,
    pub checks: Vec<CheckLine>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.count(CheckStatus::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(CheckStatus::Fail)
    }

    pub fn inconclusive(&self) -> usize {
        self.count(CheckStatus::Inconclusive)
    }

    fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("pgca verification report\n");
        out.push_str(&format!("suite: {}\n", self.suite));
        out.push_str(&format!("seed: {}\n", self.seed));
        out.push_str(&format!("shape: {}\n", self.shape));
        out.push_str(&format!(
            "bounds: degree={} generators={} samples={}\n\n",
            self.degree_bound, self.gen_bound, self.sample_count
        ));
        for check in &self.checks {
            out.push_str(&format!(
                "[{}] {} — {}",
                check.status, check.name, check.claim
            ));
            if !check.detail.is_empty() {
                out.push_str(&format!(" | {}", check.detail));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "\nresult: {} passed, {} failed, {} inconclusive\n",
            self.passed(),
            self.failed(),
            self.inconclusive()
        ));
        out
    }

    /// Machine-readable rendering: tab-separated lines, one record each.
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        out.push_str("pgca-report\t1\n");
        out.push_str(&format!("suite\t{}\n", self.suite));
        out.push_str(&format!("seed\t{}\n", self.seed));
        out.push_str(&format!("shape\t{}\n", self.shape));
        out.push_str(&format!("degree_bound\t{}\n", self.degree_bound));
        out.push_str(&format!("gen_bound\t{}\n", self.gen_bound));
        out.push_str(&format!("sample_count\t{}\n", self.sample_count));
        for check in &self.checks {
            out.push_str(&format!(
                "check\t{}\t{}\t{}\t{}\n",
                check.name, check.status, check.claim, check.detail
            ));
        }
        out.push_str(&format!(
            "summary\t{}\t{}\t{}\n",
            self.passed(),
            self.failed(),
            self.inconclusive()
        ));
        out
    }

    pub fn emit(&self, format: crate::config::ReportFormat) -> String {
        match format {
            crate::config::ReportFormat::Text => self.to_text(),
            crate::config::ReportFormat::Structured => self.to_structured(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("structured report, line {line}: {message}")]
pub struct ReportParseError {
    pub line: usize,
    pub message: String,
}

/// Parse the structured form back into a [`Report`]. `parse(emit(r)) == r`.
pub fn parse_structured(input: &str) -> Result<Report, ReportParseError> {
    let fail = |line: usize, message: &str| ReportParseError {
        line,
        message: message.to_string(),
    };
    let mut lines = input.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| fail(1, "empty input"))?;
    if header != "pgca-report\t1" {
        return Err(fail(1, "missing 'pgca-report\\t1' header"));
    }
    let mut suite = None;
    let mut seed = None;
    let mut shape = None;
    let mut degree_bound = None;
    let mut gen_bound = None;
    let mut sample_count = None;
    let mut checks = Vec::new();
    let mut summary_seen = false;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[0] {
            "suite" if fields.len() == 2 => suite = Some(fields[1].to_string()),
            "seed" if fields.len() == 2 => {
                seed = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| fail(lineno, "invalid seed"))?,
                )
            }
            "shape" if fields.len() == 2 => shape = Some(fields[1].to_string()),
            "degree_bound" if fields.len() == 2 => {
                degree_bound = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| fail(lineno, "invalid degree_bound"))?,
                )
            }
            "gen_bound" if fields.len() == 2 => {
                gen_bound = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| fail(lineno, "invalid gen_bound"))?,
                )
            }
            "sample_count" if fields.len() == 2 => {
                sample_count = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| fail(lineno, "invalid sample_count"))?,
                )
            }
            "check" if fields.len() == 5 => {
                let status: CheckStatus = fields[2]
                    .parse()
                    .map_err(|_| fail(lineno, "invalid status"))?;
                checks.push(CheckLine {
                    name: fields[1].to_string(),
                    status,
                    claim: fields[3].to_string(),
                    detail: fields[4].to_string(),
                });
            }
            "summary" if fields.len() == 4 => summary_seen = true,
            _ => return Err(fail(lineno, "unrecognized record")),
        }
    }
    if !summary_seen {
        return Err(fail(0, "missing summary record"));
    }
    Ok(Report {
        suite: suite.ok_or_else(|| fail(0, "missing suite"))?,
        seed: seed.ok_or_else(|| fail(0, "missing seed"))?,
        shape: shape.ok_or_else(|| fail(0, "missing shape"))?,
        degree_bound: degree_bound.ok_or_else(|| fail(0, "missing degree_bound"))?,
        gen_bound: gen_bound.ok_or_else(|| fail(0, "missing gen_bound"))?,
        sample_count: sample_count.ok_or_else(|| fail(0, "missing sample_count"))?,
        checks,
    })
}
