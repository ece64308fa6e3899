//! Homomorphisms between table-backed groups, built by extending a map
//! on generators across the Cayley graph. A consistent extension is
//! automatically a homomorphism on the generated subgroup.

use super::cayley::CayleyGroup;
use super::GroupError;

/// Result of extending a generator map: the image of every element of
/// `⟨gens⟩`, with `u32::MAX` outside the generated subgroup.
#[derive(Debug, Clone)]
pub struct PartialMap {
    pub map: Vec<u32>,
    /// elements of the generated subgroup in discovery order
    pub domain_elements: Vec<u32>,
}

/// Extends `gens[i] -> images[i]` multiplicatively over `⟨gens⟩`.
/// Returns None when the extension is inconsistent (no homomorphism with
/// those generator images exists). When `injective` is set, a collision
/// of images also aborts.
pub fn extend_generator_map(
    dom: &CayleyGroup,
    gens: &[usize],
    codom: &CayleyGroup,
    images: &[usize],
    injective: bool,
) -> Option<PartialMap> {
    debug_assert_eq!(gens.len(), images.len());
    let mut map = vec![u32::MAX; dom.order()];
    let mut used = vec![false; codom.order()];
    map[0] = 0;
    used[0] = true;
    let mut order_list: Vec<u32> = vec![0];
    let mut head = 0;
    while head < order_list.len() {
        let x = order_list[head] as usize;
        head += 1;
        let fx = map[x] as usize;
        for (&g, &h) in gens.iter().zip(images.iter()) {
            let y = dom.mul(x, g);
            let fy = codom.mul(fx, h);
            if map[y] == u32::MAX {
                if injective {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                }
                map[y] = fy as u32;
                order_list.push(y as u32);
            } else if map[y] as usize != fy {
                return None;
            }
        }
    }
    Some(PartialMap {
        map,
        domain_elements: order_list,
    })
}

/// A verified homomorphism between two Cayley groups, stored as the full
/// element map. Construction fails unless the generator images extend
/// consistently over the whole domain.
#[derive(Debug, Clone)]
pub struct GroupHomomorphism {
    domain_order: usize,
    codomain_order: usize,
    gen_images: Vec<(u32, u32)>,
    map: Vec<u32>,
}

impl GroupHomomorphism {
    pub fn from_generator_images(
        dom: &CayleyGroup,
        codom: &CayleyGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Result<Self, GroupError> {
        if gens.len() != images.len() {
            return Err(GroupError::InvalidHomomorphism(
                "generator and image counts differ".into(),
            ));
        }
        let ext = extend_generator_map(dom, gens, codom, images, false)
            .ok_or_else(|| GroupError::InvalidHomomorphism("generator map does not extend".into()))?;
        if ext.domain_elements.len() != dom.order() {
            return Err(GroupError::InvalidHomomorphism(format!(
                "generators span only {} of {} elements",
                ext.domain_elements.len(),
                dom.order()
            )));
        }
        Ok(GroupHomomorphism {
            domain_order: dom.order(),
            codomain_order: codom.order(),
            gen_images: gens
                .iter()
                .zip(images.iter())
                .map(|(&g, &h)| (g as u32, h as u32))
                .collect(),
            map: ext.map,
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn domain_order(&self) -> usize {
        self.domain_order
    }

    pub fn codomain_order(&self) -> usize {
        self.codomain_order
    }

    pub fn generator_images(&self) -> &[(u32, u32)] {
        &self.gen_images
    }

    pub fn kernel_size(&self) -> usize {
        self.map.iter().filter(|&&v| v == 0).count()
    }
}
