//! The classification pipeline: the entrance gate for groups attaining
//! `|G| = e^4 - e^3` with a degree-(e^2-e) character, the construction
//! census for each feasible degree, the theorem-by-theorem structure
//! verifier, and deterministic JSON reports.

mod gate;
mod pipeline;
mod report;
mod verify;

pub use gate::{isaacs_gate, GateOutcome};
pub use pipeline::{
    classify_e_prime, classify_p_closed, classify_semilinear_stretch, CensusGroup, CensusOutcome,
};
pub use report::{emit_report, CensusGroupRecord, CensusRecord};
pub use verify::{verify_structure, CheckResult, StructureReport};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("unsupported census degree e = {e}: {why}")]
    UnsupportedDegree { e: u64, why: String },
    #[error("candidate group has order {order}, expected e^3 = {expected}")]
    WrongCandidateOrder { order: usize, expected: usize },
    #[error("census count mismatch for e = {e}: expected {expected}, found {found} ({details})")]
    CountMismatch {
        e: u64,
        expected: usize,
        found: usize,
        details: String,
    },
    #[error("group does not pass the gate: {0}")]
    GateFailed(String),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    CharTable(#[from] crate::chartab::CharTableError),
    #[error(transparent)]
    Construct(#[from] crate::construct::ConstructError),
    #[error(transparent)]
    Aut(#[from] crate::aut::AutError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
            CheckStatus::Skipped => write!(f, "skipped"),
        }
    }
}

/// How a census member was built; enough to reproduce it bit-exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// A named constructor family with numeric parameters.
    Family { family: String, params: Vec<u64> },
    /// `P ⋊ C_n` where the generator of C_n acts as the automorphism with
    /// the stated images of P's minimal generating set.
    SemidirectCyclic {
        p_family: String,
        p_params: Vec<u64>,
        n: u64,
        min_gens: Vec<u64>,
        images: Vec<u64>,
    },
    /// Heisenberg(q) ⋊ C8 by a semilinear automorphism.
    SemidirectSemilinear { q: u64, u1: u64, u2: u64, frobenius: u32 },
    /// Loaded from caller-supplied input rather than a constructor.
    External { label: String },
}

impl Recipe {
    pub fn describe(&self) -> String {
        match self {
            Recipe::Family { family, params } => {
                let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                format!("{family}({})", ps.join(","))
            }
            Recipe::SemidirectCyclic {
                p_family,
                p_params,
                n,
                images,
                ..
            } => {
                let ps: Vec<String> = p_params.iter().map(|p| p.to_string()).collect();
                let is: Vec<String> = images.iter().map(|i| i.to_string()).collect();
                format!("{p_family}({}) : C{} via [{}]", ps.join(","), n, is.join(","))
            }
            Recipe::SemidirectSemilinear { q, u1, u2, frobenius } => {
                format!("heisenberg({q}) : C8 semilinear(u1={u1},u2={u2},frob={frobenius})")
            }
            Recipe::External { label } => format!("external:{label}"),
        }
    }
}
