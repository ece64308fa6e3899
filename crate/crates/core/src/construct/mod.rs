//! Constructors for every concrete group the library reasons about:
//! standard families, extraspecial and Heisenberg groups, semidirect
//! products from verified actions, and two-transitive Frobenius groups
//! including the nonsolvable SL(2,5)-type complements.

mod families;
mod field;
mod frobenius;
mod product;

pub use families::{
    cyclic, dihedral, direct_product, elementary_abelian, extraspecial_p3, heisenberg,
    heisenberg_coords, heisenberg_index, quaternion8, special_linear_2,
};
pub use field::FiniteField;
pub use frobenius::{
    field_action_is_two_transitive, field_frobenius_group, sl25_complement,
    two_transitive_frobenius_check, Sl25Certificate,
};
pub use product::{semidirect_product, ActionSpec, SemidirectProduct};


use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("{n} is not a prime power")]
    NotPrimePower { n: u64 },
    #[error("{n} is not prime")]
    NotPrime { n: u64 },
    #[error("field size {q} exceeds the supported bound 1024")]
    FieldTooLarge { q: u64 },
    #[error("extraspecial exponent must be p or p^2, got {exponent} for p = {p}")]
    BadExponent { p: u64, exponent: u64 },
    #[error("Heisenberg groups are materialized only for q <= 16, got {q}")]
    HeisenbergTooLarge { q: u64 },
    #[error("resulting order {order} exceeds the table backend limit")]
    OrderTooLarge { order: usize },
    #[error("action supplies {autos} automorphisms for {gens} generators")]
    ActionArity { gens: usize, autos: usize },
    #[error("automorphism degree {degree} does not match group order {order}")]
    ActionDegree { degree: usize, order: usize },
    #[error("action is not a homomorphism: inconsistent at element {element} times generator {generator}")]
    ActionNotHomomorphism { element: usize, generator: usize },
    #[error("action generators span {spanned} of {order} elements")]
    ActionGeneratorsDontSpan { spanned: usize, order: usize },
    #[error("two-transitivity verification failed for q = {q}")]
    FrobeniusCheckFailed { q: u64 },
    #[error("no nonsolvable complement is defined for p = {p}")]
    UnsupportedPrime { p: u64 },
    #[error("search exhausted without a certificate: {what}")]
    SearchExhausted { what: String },
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}
