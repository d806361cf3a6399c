use serde::Serialize;
use serde_json::Value;

use crate::f2poly::Polynomial;
use crate::hitsolver::HitCertificate;

/// Outcome of one check.  Variants are ordered from best to worst, which is
/// how a report folds its steps into one status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactEqual,
    /// A property (vanishing, membership, classification) holds.
    Holds,
    /// The two sides differ by a certified hit polynomial.
    EqualModuloHit,
    /// A solver resource ceiling stopped the check.
    Ceiling,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ExactEqual => "exact-equal",
            Status::Holds => "holds",
            Status::EqualModuloHit => "equal-modulo-hit",
            Status::Ceiling => "ceiling",
            Status::Failed => "failed",
        }
    }
}

/// Summary of a certificate that was checked by recomputation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    /// `explicit` when built from an identity, `solver` otherwise.
    pub source: &'static str,
    pub terms: usize,
    pub max_op: u32,
    pub verified: bool,
}

impl CertificateSummary {
    pub fn new(source: &'static str, cert: &HitCertificate, verified: bool) -> Self {
        CertificateSummary {
            source,
            terms: cert.terms().len(),
            max_op: cert.terms().iter().map(|(i, _)| *i).max().unwrap_or(0),
            verified,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub name: String,
    pub status: Status,
    /// Optional steps may stop at a ceiling without failing the report.
    pub required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSummary>,
    /// Set for failed equalities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
}

impl Step {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Step {
            name: name.into(),
            status,
            required: true,
            detail: None,
            certificate: None,
            difference: None,
        }
    }

    pub fn detail(mut self, text: impl Into<String>) -> Self {
        self.detail = Some(text.into());
        self
    }

    pub fn optional(mut self) -> Self {
        self.required = false;
        self
    }

    pub fn passed(&self) -> bool {
        match self.status {
            Status::Failed => false,
            Status::Ceiling => !self.required,
            _ => true,
        }
    }
}

/// One record of the replay output.
#[derive(Clone, Debug, Serialize)]
pub struct ReplayReport {
    pub case: String,
    pub params: Value,
    pub status: Status,
    pub passed: bool,
    pub steps: Vec<Step>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall time, only filled when timings are requested so that reports
    /// are otherwise reproducible byte for byte.
    pub timing_ms: Option<f64>,
}

impl ReplayReport {
    pub fn new(case: impl Into<String>, params: Value, steps: Vec<Step>) -> Self {
        let status = steps
            .iter()
            .map(|s| s.status)
            .max()
            .unwrap_or(Status::Holds);
        let passed = steps.iter().all(Step::passed);
        ReplayReport {
            case: case.into(),
            params,
            status,
            passed,
            steps,
            notes: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn step(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.name == name)
    }
}

const SHOWN_TERMS: usize = 12;

/// A polynomial shortened for reports.
pub fn abbreviate(p: &Polynomial) -> String {
    if p.len() <= SHOWN_TERMS {
        return p.to_string();
    }
    let head: Vec<String> = p.terms()[..SHOWN_TERMS]
        .iter()
        .map(|m| m.to_string())
        .collect();
    format!("{} + ... ({} terms)", head.join(" + "), p.len())
}
