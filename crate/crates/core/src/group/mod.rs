//! Core finite-group representations: dense multiplication tables for
//! small groups and generator-based permutation groups, with the
//! structural computations the rest of the crate is built on.

mod cayley;
mod io;
mod iso;
mod morphism;
mod perm;
mod subgroup;

pub use cayley::{CayleyGroup, Nilpotence, FULL_ASSOC_LIMIT, MAX_ORDER};
pub use io::{cayley_to_json, parse_group_json, perm_to_json, AnyGroup, GroupFile};
pub use iso::{for_each_isomorphism, is_isomorphic, isomorphism};
pub use morphism::{extend_generator_map, GroupHomomorphism, PartialMap};
pub use perm::{Perm, PermutationGroup};
pub use subgroup::{
    closure, is_normal, normal_closure, trivial_subgroup, whole_group, SubgroupHandle,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("group order {order} exceeds the table backend limit {max}")]
    TooLarge { order: usize, max: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("subgroup handle belongs to a group of order {expected}, not {got}")]
    ParentMismatch { expected: usize, got: usize },
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: usize },
    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: usize, p: u64 },
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
}

impl CayleyGroup {
    /// The left-regular permutation representation on the element indices,
    /// generated by the images of a small generating set.
    pub fn regular_representation(&self) -> PermutationGroup {
        let gens: Vec<Perm> = self
            .generating_set()
            .iter()
            .map(|&g| {
                Perm::from_images(
                    (0..self.order())
                        .map(|x| self.mul(g as usize, x) as u32)
                        .collect(),
                )
                .expect("rows of a Cayley table are permutations")
            })
            .collect();
        PermutationGroup::new(self.order(), gens).expect("degrees match")
    }

    /// Materializes a permutation group of order at most [`MAX_ORDER`] as
    /// a Cayley table, elements enumerated by closure from the identity.
    /// Returns the group and the permutations in index order.
    pub fn from_permutation_group(
        pg: &PermutationGroup,
    ) -> Result<(CayleyGroup, Vec<Perm>), GroupError> {
        let order = pg.order();
        if order > MAX_ORDER as u128 {
            return Err(GroupError::TooLarge {
                order: order as usize,
                max: MAX_ORDER,
            });
        }
        let order = order as usize;
        let mut elems: Vec<Perm> = vec![Perm::identity(pg.degree())];
        let mut index: std::collections::HashMap<Perm, usize> = std::collections::HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut head = 0;
        while head < elems.len() {
            let p = elems[head].clone();
            head += 1;
            for g in pg.generators() {
                let q = g.compose(&p);
                if !index.contains_key(&q) {
                    index.insert(q.clone(), elems.len());
                    elems.push(q);
                }
            }
        }
        debug_assert_eq!(elems.len(), order);
        let mut flat = Vec::with_capacity(order * order);
        for a in &elems {
            for b in &elems {
                flat.push(index[&a.compose(b)] as u16);
            }
        }
        Ok((CayleyGroup::from_flat_table(order, flat)?, elems))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{dihedral, heisenberg, quaternion8};

    #[test]
    fn regular_representation_order() {
        for g in [dihedral(8), quaternion8(), heisenberg(3).unwrap()] {
            let reg = g.regular_representation();
            assert_eq!(reg.order(), g.order() as u128);
        }
    }

    #[test]
    fn round_trip_through_permutations() {
        let d8 = dihedral(8);
        let (back, _) = CayleyGroup::from_permutation_group(&d8.regular_representation()).unwrap();
        assert!(is_isomorphic(&d8, &back));
    }
}
