//! Automorphism groups of small groups: verified automorphism objects,
//! full enumeration by generator-image backtracking, the
//! Frobenius-transitive complement search, and explicit semilinear
//! complements for Heisenberg groups.

mod automorphism;
mod search;
mod semilinear;

pub use automorphism::Automorphism;
pub use search::{
    automorphism_group, frobenius_transitive_subgroups, minimal_generating_set, AutGroup,
    AutMeta, ComplementShape, ComplementWitness, MAX_AUT_ORDER,
};
pub use semilinear::semilinear_automorphism;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AutError {
    #[error("permutation degree {degree} does not match group order {order}")]
    DegreeMismatch { degree: usize, order: usize },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("group of order {order} is not a p-group")]
    NotPGroup { order: usize },
    #[error("automorphism group exceeds the enumeration cap {cap}")]
    TooManyAutomorphisms { cap: usize },
    #[error("search budget exceeded after {nodes} nodes")]
    SearchBudgetExceeded { nodes: u64 },
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}
