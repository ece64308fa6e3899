//! Semidirect products `P ⋊ H` from an action given on generators of H.
//! The action map is extended over all of H and its well-definedness is
//! verified before any table is built; a non-homomorphism is rejected
//! with the relation it violates.

use crate::aut::Automorphism;
use crate::group::{closure, CayleyGroup, Perm, SubgroupHandle};

use super::ConstructError;

/// A verified action `H -> Aut(P)`, stored as one automorphism per
/// element of H.
#[derive(Debug, Clone)]
pub struct ActionSpec {
    h_order: usize,
    p_order: usize,
    phi: Vec<Perm>,
}

impl ActionSpec {
    /// `gens[i]` (an element of `h`) acts as `autos[i]`. The generators
    /// must span H; the extension must be single-valued.
    pub fn new(
        h: &CayleyGroup,
        p: &CayleyGroup,
        gens: &[usize],
        autos: &[Automorphism],
    ) -> Result<ActionSpec, ConstructError> {
        if gens.len() != autos.len() {
            return Err(ConstructError::ActionArity {
                gens: gens.len(),
                autos: autos.len(),
            });
        }
        for a in autos {
            if a.perm().degree() != p.order() {
                return Err(ConstructError::ActionDegree {
                    degree: a.perm().degree(),
                    order: p.order(),
                });
            }
        }
        let mut phi: Vec<Option<Perm>> = vec![None; h.order()];
        phi[0] = Some(Perm::identity(p.order()));
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let px = phi[x].clone().expect("queued elements are assigned");
            for (&g, a) in gens.iter().zip(autos.iter()) {
                let y = h.mul(x, g);
                let py = px.compose(a.perm());
                match &phi[y] {
                    None => {
                        phi[y] = Some(py);
                        queue.push(y);
                    }
                    Some(existing) => {
                        if *existing != py {
                            return Err(ConstructError::ActionNotHomomorphism {
                                element: x,
                                generator: g,
                            });
                        }
                    }
                }
            }
        }
        if queue.len() != h.order() {
            return Err(ConstructError::ActionGeneratorsDontSpan {
                spanned: queue.len(),
                order: h.order(),
            });
        }
        Ok(ActionSpec {
            h_order: h.order(),
            p_order: p.order(),
            phi: phi.into_iter().map(|p| p.unwrap()).collect(),
        })
    }

    /// The trivial action of `h` on `p`.
    pub fn trivial(h: &CayleyGroup, p: &CayleyGroup) -> ActionSpec {
        ActionSpec {
            h_order: h.order(),
            p_order: p.order(),
            phi: vec![Perm::identity(p.order()); h.order()],
        }
    }

    pub fn apply(&self, h: usize, x: usize) -> usize {
        self.phi[h].apply(x)
    }
}

/// A semidirect product together with the embedded images of the factors.
#[derive(Debug)]
pub struct SemidirectProduct {
    pub group: CayleyGroup,
    pub normal_part: SubgroupHandle,
    pub complement: SubgroupHandle,
}

/// `P ⋊ H`: pairs (x, h) indexed `h * |P| + x`, with
/// `(x1, h1)(x2, h2) = (x1 . phi(h1)(x2), h1 h2)`. P embeds as the first
/// |P| indices; H as the indices `h * |P|`.
pub fn semidirect_product(
    p: &CayleyGroup,
    h: &CayleyGroup,
    action: &ActionSpec,
) -> Result<SemidirectProduct, ConstructError> {
    if action.h_order != h.order() || action.p_order != p.order() {
        return Err(ConstructError::ActionDegree {
            degree: action.p_order,
            order: p.order(),
        });
    }
    let np = p.order();
    let order = np * h.order();
    if order > crate::group::MAX_ORDER {
        return Err(ConstructError::OrderTooLarge { order });
    }
    let group = CayleyGroup::from_fn(order, |u, v| {
        let (x1, h1) = (u % np, u / np);
        let (x2, h2) = (v % np, v / np);
        let x = p.mul(x1, action.apply(h1, x2));
        let hh = h.mul(h1, h2);
        hh * np + x
    })?;
    let p_gens: Vec<usize> = p.generating_set().iter().map(|&g| g as usize).collect();
    let h_gens: Vec<usize> = h.generating_set().iter().map(|&g| (g as usize) * np).collect();
    let normal_part = closure(&group, &p_gens);
    let complement = closure(&group, &h_gens);
    debug_assert_eq!(normal_part.order(), p.order());
    debug_assert_eq!(complement.order(), h.order());
    Ok(SemidirectProduct {
        group,
        normal_part,
        complement,
    })
}
