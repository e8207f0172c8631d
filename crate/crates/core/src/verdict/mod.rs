//! Hypothesis checkers for the ideal criteria, certificates for
//! syzygy-finiteness and finite representation type, and verdict reports.
//!
//! Properties such as "syzygy-finite" are never guessed: a check holds
//! only with a certificate that can be recomputed from the algebra, or
//! with an explicit user assertion recorded as such.

mod certificate;
mod checks;
mod request;

pub use certificate::{certify_igusa_todorov, certify_rep_finite, certify_syzygy_finite, Certificate, CertificateKind, Strength};
pub use checks::{check_chain, check_ij, scan_radical_conditions};
pub use request::{example_verdicts, replay, run_request, Replay, Request};

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraError;
use crate::homological::{HomError, DEFAULT_CUTOFF, DEFAULT_ORBIT_BOUND};
use crate::krull_schmidt::KsError;
use crate::rep::RepError;
use crate::session::SessionError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerdictError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Ks(#[from] KsError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error("chain is not nested at position {0}")]
    ChainNotNested(usize),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub seed: u64,
    pub cutoff: usize,
    pub orbit_bound: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 42,
            cutoff: DEFAULT_CUTOFF,
            orbit_bound: DEFAULT_ORBIT_BOUND,
        }
    }
}

/// User assertions, keyed by the ideal whose quotient they describe
/// (`"0"` for the algebra itself). They only ever add certificates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hints {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rep_finite: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub syzygy_finite: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub syzygy_bounded: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub igusa_todorov: Vec<String>,
}

impl Hints {
    pub fn is_empty(&self) -> bool {
        self.rep_finite.is_empty()
            && self.syzygy_finite.is_empty()
            && self.syzygy_bounded.is_empty()
            && self.igusa_todorov.is_empty()
    }

    fn has(list: &[String], key: &str) -> bool {
        list.iter().any(|k| k.strip_prefix("A/").unwrap_or(k) == key)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    SyzygyFinite,
    SyzygyBounded,
    IgusaTodorov,
    FindimFinite,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub evidence: serde_json::Value,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool, evidence: serde_json::Value) -> Self {
        Check {
            name: name.into(),
            holds,
            evidence,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cutoffs {
    pub pd: usize,
    pub orbit: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub algebra: String,
    pub theorem: String,
    pub clause: Option<String>,
    pub checks: Vec<Check>,
    pub conclusion: Conclusion,
    pub findim_finite: bool,
    pub notes: Vec<String>,
    pub seed: u64,
    pub cutoffs: Cutoffs,
    /// What to rerun to reproduce this verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub request: Option<Request>,
}

impl Verdict {
    fn new(algebra: &str, theorem: &str, cfg: &Config) -> Self {
        Verdict {
            algebra: algebra.to_string(),
            theorem: theorem.to_string(),
            clause: None,
            checks: Vec::new(),
            conclusion: Conclusion::Inconclusive,
            findim_finite: false,
            notes: Vec::new(),
            seed: cfg.seed,
            cutoffs: Cutoffs {
                pd: cfg.cutoff,
                orbit: cfg.orbit_bound,
            },
            request: None,
        }
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn is_conclusive(&self) -> bool {
        self.conclusion != Conclusion::Inconclusive
    }

    /// Sets the conclusion, downgraded to `Inconclusive` unless every
    /// check holds.
    fn conclude(&mut self, c: Conclusion) {
        self.conclusion = if self.all_hold() { c } else { Conclusion::Inconclusive };
        self.findim_finite = self.conclusion != Conclusion::Inconclusive;
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
