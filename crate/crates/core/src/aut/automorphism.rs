//! Automorphisms of a table-backed group, stored as permutations of the
//! element indices and fully verified at creation.

use crate::group::{extend_generator_map, CayleyGroup, Perm};

use super::AutError;

/// A multiplication-preserving bijection of a group's element indices.
/// Creation checks preservation on every pair, so holding one is proof.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    perm: Perm,
}

impl Automorphism {
    pub fn new(g: &CayleyGroup, perm: Perm) -> Result<Self, AutError> {
        if perm.degree() != g.order() {
            return Err(AutError::DegreeMismatch {
                degree: perm.degree(),
                order: g.order(),
            });
        }
        if perm.apply(0) != 0 {
            return Err(AutError::NotAutomorphism(
                "identity is not fixed".into(),
            ));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if perm.apply(g.mul(a, b)) != g.mul(perm.apply(a), perm.apply(b)) {
                    return Err(AutError::NotAutomorphism(format!(
                        "multiplication not preserved at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Automorphism { perm })
    }

    /// Builds the automorphism with the given generator images, or fails
    /// when no automorphism does that.
    pub fn from_generator_images(
        g: &CayleyGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Result<Self, AutError> {
        let ext = extend_generator_map(g, gens, g, images, true).ok_or_else(|| {
            AutError::NotAutomorphism("generator images do not extend injectively".into())
        })?;
        if ext.domain_elements.len() != g.order() {
            return Err(AutError::NotAutomorphism(
                "generators do not span the group".into(),
            ));
        }
        let perm = Perm::from_images(ext.map)
            .map_err(|e| AutError::NotAutomorphism(e.to_string()))?;
        Self::new(g, perm)
    }

    /// The identity map.
    pub fn identity(g: &CayleyGroup) -> Self {
        Automorphism {
            perm: Perm::identity(g.order()),
        }
    }

    /// Conjugation by `x`.
    pub fn inner(g: &CayleyGroup, x: usize) -> Self {
        let images: Vec<u32> = (0..g.order()).map(|a| g.conjugate(a, x) as u32).collect();
        Automorphism {
            perm: Perm::from_images(images).expect("conjugation is a permutation"),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm.apply(x)
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }

    pub fn order(&self) -> u64 {
        self.perm.order()
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            perm: self.perm.compose(&other.perm),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            perm: self.perm.inverse(),
        }
    }

    /// The induced permutation on a subgroup's (sorted) element list;
    /// None when the set is not invariant.
    pub fn restriction(&self, elements: &[u32]) -> Option<Vec<u32>> {
        let pos = |x: u32| elements.binary_search(&x).ok();
        elements
            .iter()
            .map(|&e| pos(self.perm.apply(e as usize) as u32).map(|i| i as u32))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, dihedral};

    #[test]
    fn inversion_of_cyclic() {
        let c5 = cyclic(5);
        let inv = Perm::from_images(vec![0, 4, 3, 2, 1]).unwrap();
        let a = Automorphism::new(&c5, inv).unwrap();
        assert_eq!(a.order(), 2);
        assert_eq!(a.apply(2), 3);
    }

    #[test]
    fn rejects_non_automorphism() {
        let c4 = cyclic(4);
        // swapping 1 and 2 breaks multiplication
        let p = Perm::from_images(vec![0, 2, 1, 3]).unwrap();
        assert!(Automorphism::new(&c4, p).is_err());
    }

    #[test]
    fn inner_automorphisms_fix_multiplication() {
        let d8 = dihedral(8);
        for x in 0..8 {
            let a = Automorphism::inner(&d8, x);
            assert_eq!(a.apply(0), 0);
        }
    }
}
