//! Isomorphism testing for table-backed groups: cheap invariants first
//! (element-order profile, center and derived-subgroup sizes), then
//! backtracking over images of a small generating sequence. Candidate
//! assignments are discarded by constant-time word invariants (orders
//! and class sizes of pairwise products and commutators) before the
//! linear-time extension check runs.

use super::cayley::CayleyGroup;
use super::morphism::extend_generator_map;
use super::subgroup::closure;

/// Per-element invariant preserved by any isomorphism.
fn element_key(g: &CayleyGroup, x: usize) -> (usize, usize) {
    (g.elem_order(x), g.conjugacy_classes()[g.class_of(x)].len())
}

fn sorted_profile(g: &CayleyGroup) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (0..g.order()).map(|x| element_key(g, x)).collect();
    v.sort_unstable();
    v
}

/// Orders and class sizes of the products and commutators the new
/// assignment creates must match; all lookups are constant-time.
fn words_compatible(
    g: &CayleyGroup,
    h: &CayleyGroup,
    gens: &[usize],
    images: &[usize],
) -> bool {
    let d = gens.len() - 1;
    for i in 0..=d {
        let pairs = [
            (g.mul(gens[i], gens[d]), h.mul(images[i], images[d])),
            (g.mul(gens[d], gens[i]), h.mul(images[d], images[i])),
            (
                g.commutator(gens[i], gens[d]),
                h.commutator(images[i], images[d]),
            ),
        ];
        for (wg, wh) in pairs {
            if element_key(g, wg) != element_key(h, wh) {
                return false;
            }
        }
    }
    true
}

struct IsoSearch<'a> {
    g: &'a CayleyGroup,
    h: &'a CayleyGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> IsoSearch<'a> {
    /// None when a cheap invariant already separates the groups.
    fn prepare(g: &'a CayleyGroup, h: &'a CayleyGroup) -> Option<IsoSearch<'a>> {
        if g.order() != h.order() {
            return None;
        }
        if sorted_profile(g) != sorted_profile(h) {
            return None;
        }
        if g.center().order() != h.center().order() {
            return None;
        }
        if g.derived_subgroup().order() != h.derived_subgroup().order() {
            return None;
        }
        let mut buckets: std::collections::HashMap<(usize, usize), Vec<usize>> =
            std::collections::HashMap::new();
        for y in 0..h.order() {
            buckets.entry(element_key(h, y)).or_default().push(y);
        }
        // greedy generating sequence: a short sequence beats small
        // candidate buckets, because the search tree is exponential in
        // the depth but the word filter prunes wide levels cheaply. Pick
        // the element whose span gain is largest (one probe per invariant
        // key), tie-breaking toward rarer keys.
        let mut gens: Vec<usize> = Vec::new();
        loop {
            let span = closure(g, &gens);
            if span.order() == g.order() {
                break;
            }
            let mut probed: std::collections::HashSet<(usize, usize)> =
                std::collections::HashSet::new();
            let mut best: Option<(usize, usize, usize)> = None;
            for x in 0..g.order() {
                if span.contains(x) {
                    continue;
                }
                let key = element_key(g, x);
                if !probed.insert(key) {
                    continue;
                }
                let mut seeds = gens.clone();
                seeds.push(x);
                let gain = closure(g, &seeds).order();
                let cand = (usize::MAX - gain, buckets[&key].len(), x);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
            gens.push(best.expect("non-spanning subgroup has outside elements").2);
        }
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&x| buckets[&element_key(g, x)].clone())
            .collect();
        Some(IsoSearch {
            g,
            h,
            gens,
            candidates,
        })
    }

    fn walk(
        &self,
        chosen: &mut Vec<usize>,
        callback: &mut impl FnMut(&[u32]) -> bool,
    ) -> bool {
        let depth = chosen.len();
        if depth == self.gens.len() {
            if let Some(ext) =
                extend_generator_map(self.g, &self.gens, self.h, chosen, true)
            {
                if ext.domain_elements.len() == self.g.order() {
                    return callback(&ext.map);
                }
            }
            return false;
        }
        for &cand in &self.candidates[depth] {
            chosen.push(cand);
            let ok = words_compatible(self.g, self.h, &self.gens[..=depth], chosen)
                && extend_generator_map(self.g, &self.gens[..=depth], self.h, chosen, true)
                    .is_some();
            if ok && self.walk(chosen, callback) {
                chosen.pop();
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// A multiplication-preserving bijection `g -> h` as an image vector,
/// or None when the groups are not isomorphic.
pub fn isomorphism(g: &CayleyGroup, h: &CayleyGroup) -> Option<Vec<u32>> {
    if g.order() == 1 && h.order() == 1 {
        return Some(vec![0]);
    }
    let search = IsoSearch::prepare(g, h)?;
    let mut found = None;
    let mut chosen = Vec::with_capacity(search.gens.len());
    search.walk(&mut chosen, &mut |map: &[u32]| {
        found = Some(map.to_vec());
        true
    });
    found
}

pub fn is_isomorphic(g: &CayleyGroup, h: &CayleyGroup) -> bool {
    isomorphism(g, h).is_some()
}

/// Visits every isomorphism `g -> h` (as an image vector) until the
/// callback returns true; returns whether any call did.
pub fn for_each_isomorphism(
    g: &CayleyGroup,
    h: &CayleyGroup,
    mut callback: impl FnMut(&[u32]) -> bool,
) -> bool {
    if g.order() == 1 && h.order() == 1 {
        return callback(&[0]);
    }
    let Some(search) = IsoSearch::prepare(g, h) else {
        return false;
    };
    let mut chosen = Vec::with_capacity(search.gens.len());
    search.walk(&mut chosen, &mut callback)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, dihedral, direct_product, elementary_abelian, quaternion8};

    /// Exhaustive oracle: backtracking over all identity-fixing bijections
    /// in element order, pruned only by multiplication consistency. No
    /// invariants, so it is genuinely exhaustive; usable to order ~16.
    fn brute_isomorphic(g: &CayleyGroup, h: &CayleyGroup) -> bool {
        if g.order() != h.order() {
            return false;
        }
        let n = g.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        fn consistent(g: &CayleyGroup, h: &CayleyGroup, map: &[usize], upto: usize) -> bool {
            for a in 0..=upto {
                for b in 0..=upto {
                    let p = g.mul(a, b);
                    if p <= upto && h.mul(map[a], map[b]) != map[p] {
                        return false;
                    }
                }
            }
            true
        }
        fn go(
            g: &CayleyGroup,
            h: &CayleyGroup,
            map: &mut [usize],
            used: &mut [bool],
            i: usize,
        ) -> bool {
            let n = g.order();
            if i == n {
                return true;
            }
            for c in 0..n {
                if used[c] {
                    continue;
                }
                map[i] = c;
                used[c] = true;
                if consistent(g, h, map, i) && go(g, h, map, used, i + 1) {
                    return true;
                }
                used[c] = false;
                map[i] = usize::MAX;
            }
            false
        }
        go(g, h, &mut map, &mut used, 1)
    }

    #[test]
    fn d8_q8_not_isomorphic() {
        assert!(!is_isomorphic(&dihedral(8), &quaternion8()));
    }

    #[test]
    fn reflexive_with_witness() {
        for g in [dihedral(8), quaternion8(), cyclic(12)] {
            let w = isomorphism(&g, &g).unwrap();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(w[g.mul(a, b)], {
                        let x = g.mul(w[a] as usize, w[b] as usize);
                        x as u32
                    });
                }
            }
        }
    }

    #[test]
    fn agrees_with_exhaustive_search_up_to_16() {
        let pool: Vec<CayleyGroup> = vec![
            cyclic(8),
            dihedral(8),
            quaternion8(),
            elementary_abelian(2, 3),
            direct_product(&cyclic(4), &cyclic(2)),
            cyclic(12),
            dihedral(12),
            direct_product(&cyclic(6), &cyclic(2)),
            cyclic(16),
            dihedral(16),
            direct_product(&cyclic(4), &cyclic(4)),
            elementary_abelian(2, 4),
            direct_product(&dihedral(8), &cyclic(2)),
            direct_product(&quaternion8(), &cyclic(2)),
        ];
        for (i, g) in pool.iter().enumerate() {
            for (j, h) in pool.iter().enumerate() {
                let fast = is_isomorphic(g, h);
                let brute = brute_isomorphic(g, h);
                assert_eq!(fast, brute, "pool entries {i} vs {j}");
                if i == j {
                    assert!(fast);
                }
            }
        }
        // symmetry on the pool
        for g in &pool {
            for h in &pool {
                assert_eq!(is_isomorphic(g, h), is_isomorphic(h, g));
            }
        }
    }

    #[test]
    fn enumerates_all_automorphisms_of_v4() {
        // |Aut(C2 x C2)| = 6
        let v4 = elementary_abelian(2, 2);
        let mut count = 0;
        for_each_isomorphism(&v4, &v4, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 6);
    }
}
