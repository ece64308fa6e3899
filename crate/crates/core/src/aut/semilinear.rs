//! Explicit automorphisms of Heisenberg groups from semilinear data:
//! scale the two superdiagonal coordinates by units and apply a field
//! Frobenius entrywise. These give the order-(q-1)-scale complements on
//! the center without enumerating the full automorphism group, which is
//! out of reach at order 729.

use crate::construct::{heisenberg_coords, heisenberg_index, FiniteField};
use crate::group::CayleyGroup;

use super::{AutError, Automorphism};

/// The map `(a, b, c) -> (σ(a) u1, σ(b) u2, σ(c) u1 u2)` with
/// `σ = x -> x^(p^f)`, verified to be an automorphism of the given
/// Heisenberg group before being returned. Its action on the center
/// `(0, 0, c)` is `c -> σ(c) u1 u2`.
pub fn semilinear_automorphism(
    h: &CayleyGroup,
    field: &FiniteField,
    u1: u64,
    u2: u64,
    frobenius_power: u32,
) -> Result<Automorphism, AutError> {
    let q = field.q();
    if h.order() as u64 != q * q * q {
        return Err(AutError::DegreeMismatch {
            degree: h.order(),
            order: (q * q * q) as usize,
        });
    }
    if u1 == 0 || u2 == 0 {
        return Err(AutError::NotAutomorphism("scaling unit is zero".into()));
    }
    let w = field.mul(u1, u2);
    let images: Vec<u32> = (0..h.order())
        .map(|idx| {
            let (a, b, c) = heisenberg_coords(q, idx);
            let na = field.mul(field.frobenius(a, frobenius_power), u1);
            let nb = field.mul(field.frobenius(b, frobenius_power), u2);
            let nc = field.mul(field.frobenius(c, frobenius_power), w);
            heisenberg_index(q, na, nb, nc) as u32
        })
        .collect();
    let perm = crate::group::Perm::from_images(images)
        .map_err(|e| AutError::NotAutomorphism(e.to_string()))?;
    Automorphism::new(h, perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::heisenberg;

    #[test]
    fn identity_parameters_give_identity() {
        let f = FiniteField::new(4).unwrap();
        let h = heisenberg(4).unwrap();
        let a = semilinear_automorphism(&h, &f, 1, 1, 0).unwrap();
        assert!(a.is_identity());
    }

    #[test]
    fn generator_scaling_on_f4() {
        let f = FiniteField::new(4).unwrap();
        let h = heisenberg(4).unwrap();
        let g = f.generator();
        let a = semilinear_automorphism(&h, &f, g, 1, 0).unwrap();
        assert_eq!(a.order(), 3);
        // Frobenius on the three nonidentity center elements
        let z = h.center();
        let action = a.restriction(z.elements()).unwrap();
        assert!(action.iter().enumerate().skip(1).all(|(i, &v)| v as usize != i));
    }

    #[test]
    fn generator_scaling_on_f9() {
        let f = FiniteField::new(9).unwrap();
        let h = heisenberg(9).unwrap();
        let g = f.generator();
        let a = semilinear_automorphism(&h, &f, g, 1, 0).unwrap();
        assert_eq!(a.order(), 8);
        // acts on the center by multiplication by the generator: 8 nontrivial
        // powers, each fixed-point-free on the 8 nonzero center points
        let z = h.center();
        let action = a.restriction(z.elements()).unwrap();
        let mut pow: Vec<u32> = (0..9).collect();
        for _ in 0..8 {
            pow = pow.iter().map(|&i| action[i as usize]).collect();
        }
        assert!(pow.iter().enumerate().all(|(i, &v)| v as usize == i));
    }
}
