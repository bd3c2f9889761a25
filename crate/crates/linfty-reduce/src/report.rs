//! Named property checks and deterministic rendering of results.

use serde::Serialize;

use crate::error::Result;
use crate::graded::scalar::format_scalar;
use crate::graded::FormalSeries;
use crate::poly::mono::format_mono;
use crate::poly::PolyMultivector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), passed: false, witness: Some(witness.into()) }
    }

    /// Passes when `residual` is zero.
    pub fn zero(name: impl Into<String>, residual: &PolyMultivector, names: &[String]) -> Self {
        if residual.is_zero() {
            Self::pass(name)
        } else {
            Self::fail(name, format_element(residual, names))
        }
    }

    /// Passes on `Ok`; a contract violation becomes a failure with its message as the witness.
    pub fn from_result(name: impl Into<String>, r: Result<()>) -> Result<Self> {
        match r {
            Ok(()) => Ok(Self::pass(name)),
            Err(crate::Error::Contract(msg)) => Ok(Self::fail(name, msg)),
            Err(e) => Err(e),
        }
    }

    pub fn text(&self) -> String {
        match &self.witness {
            None => format!("PASS {}", self.name),
            Some(w) => format!("FAIL {}: {w}", self.name),
        }
    }
}

/// A titled block of output lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

impl Section {
    /// One line per term of `x`, or `0`.
    pub fn element(title: impl Into<String>, x: &PolyMultivector, names: &[String]) -> Self {
        let lines = if x.is_zero() { vec!["0".to_string()] } else { format_terms(x, names) };
        Section { title: title.into(), lines }
    }
}

/// The outcome of one command on one fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub fixture: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &'static str, fixture: &str, checks: Vec<Check>, sections: Vec<Section>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report { command, fixture: fixture.to_string(), passed, checks, sections }
    }

    pub fn text(&self) -> String {
        let mut out = format!("{} {}: {}\n", self.command, self.fixture, if self.passed { "pass" } else { "FAIL" });
        for c in &self.checks {
            out += &format!("  {}\n", c.text());
        }
        for s in &self.sections {
            out += &format!("{}:\n", s.title);
            for l in &s.lines {
                out += &format!("  {l}\n");
            }
        }
        out
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// `{"error": {"message", "exit_code", "path"?}}`, the JSON form of a failed command.
pub fn error_json(e: &crate::Error) -> String {
    let mut err = serde_json::json!({ "message": e.to_string(), "exit_code": e.exit_code() });
    if let crate::Error::Invalid { path, .. } = e {
        err["path"] = serde_json::json!(path);
    }
    serde_json::to_string_pretty(&serde_json::json!({ "error": err })).expect("json")
}

/// `c_0 + c_1 ħ + …` with zero coefficients dropped.
pub fn format_series(s: &FormalSeries) -> String {
    let parts: Vec<String> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| {
            let c = format_scalar(c);
            let c = if c.contains('/') || c.starts_with('-') { format!("({c})") } else { c };
            match k {
                0 => c,
                1 => format!("{c}ħ"),
                _ => format!("{c}ħ^{k}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// One `coefficient · monomial` string per term, in canonical order.
pub fn format_terms(x: &PolyMultivector, names: &[String]) -> Vec<String> {
    x.iter().map(|(k, c)| format!("{} · {}", format_series(c), format_mono(k, names))).collect()
}

pub fn format_element(x: &PolyMultivector, names: &[String]) -> String {
    if x.is_zero() {
        "0".into()
    } else {
        format_terms(x, names).join(" + ")
    }
}
