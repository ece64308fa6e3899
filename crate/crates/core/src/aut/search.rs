//! Automorphism-group enumeration for small groups by backtracking over
//! images of a minimal generating set, and the search for complements
//! acting Frobeniusly and transitively on the center.

use std::collections::{HashMap, HashSet};

use crate::group::{closure, extend_generator_map, CayleyGroup, Perm, PermutationGroup};

use super::{AutError, Automorphism};

/// Full-enumeration cap.
pub const MAX_AUT_ORDER: usize = 1_000_000;
/// Backtracking budget in extension nodes.
const MAX_SEARCH_NODES: u64 = 200_000_000;

/// Lifts of a basis of P/Φ(P): a generating set of minimal size for a
/// p-group.
pub fn minimal_generating_set(p: &CayleyGroup) -> Result<Vec<usize>, AutError> {
    let (prime, _) = crate::arith::is_prime_power(p.order() as u64)
        .ok_or(AutError::NotPGroup { order: p.order() })?;
    if p.order() == 1 {
        return Ok(Vec::new());
    }
    let phi = p.frattini_of_p_group(prime).map_err(AutError::Group)?;
    let mut chosen: Vec<usize> = Vec::new();
    let mut seeds: Vec<usize> = phi.gens().iter().map(|&x| x as usize).collect();
    let mut span = closure(p, &seeds);
    for x in 0..p.order() {
        if span.order() == p.order() {
            break;
        }
        if !span.contains(x) {
            chosen.push(x);
            seeds.push(x);
            span = closure(p, &seeds);
        }
    }
    let rank = {
        let idx = p.order() / phi.order();
        let mut r = 0u32;
        let mut n = idx;
        while n > 1 {
            n /= prime as usize;
            r += 1;
        }
        r as usize
    };
    debug_assert_eq!(chosen.len(), rank, "lifts of a Frattini-quotient basis");
    Ok(chosen)
}

#[derive(Debug, Clone)]
pub struct AutMeta {
    pub order: u32,
    /// induced permutation of the center's element positions
    pub center_action: Vec<u16>,
}

/// A fully enumerated automorphism group, elements stored compactly as
/// generator-image tuples.
#[derive(Debug)]
pub struct AutGroup {
    pub min_gens: Vec<usize>,
    tuples: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
    meta: Vec<AutMeta>,
    center_elements: Vec<u32>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuples(&self) -> &[Vec<u16>] {
        &self.tuples
    }

    pub fn meta(&self, i: usize) -> &AutMeta {
        &self.meta[i]
    }

    pub fn center_elements(&self) -> &[u32] {
        &self.center_elements
    }

    pub fn index_of(&self, tuple: &[u16]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// The full permutation of element `i`'s automorphism.
    pub fn materialize_perm(&self, p: &CayleyGroup, i: usize) -> Perm {
        let images: Vec<usize> = self.tuples[i].iter().map(|&x| x as usize).collect();
        let ext = extend_generator_map(p, &self.min_gens, p, &images, true)
            .expect("enumerated tuples extend");
        Perm::from_images(ext.map).expect("automorphisms are bijections")
    }

    /// Element `i` as a verified automorphism.
    pub fn automorphism(&self, p: &CayleyGroup, i: usize) -> Result<Automorphism, AutError> {
        Automorphism::new(p, self.materialize_perm(p, i))
    }

    /// Tuple of the inner automorphism given by conjugation by x.
    pub fn inner_tuple(&self, p: &CayleyGroup, x: usize) -> Vec<u16> {
        self.min_gens
            .iter()
            .map(|&g| p.conjugate(g, x) as u16)
            .collect()
    }

    /// A permutation-group realization from a greedy generator subset.
    pub fn permutation_group(&self, p: &CayleyGroup) -> PermutationGroup {
        let mut gens: Vec<Perm> = Vec::new();
        let target = self.order() as u128;
        let mut current = PermutationGroup::new(p.order(), Vec::new()).expect("valid degree");
        for i in 0..self.order() {
            if current.order() == target {
                break;
            }
            let perm = self.materialize_perm(p, i);
            if !current.contains(&perm) {
                gens.push(perm);
                current = PermutationGroup::new(p.order(), gens.clone()).expect("valid degree");
            }
        }
        current
    }
}

/// Enumerates Aut(P) by backtracking over images of a minimal (for
/// p-groups) generating set, pruning candidates by element order and
/// class size and checking extension consistency at every depth.
pub fn automorphism_group(p: &CayleyGroup) -> Result<AutGroup, AutError> {
    let gens = match minimal_generating_set(p) {
        Ok(g) => g,
        Err(AutError::NotPGroup { .. }) => {
            p.generating_set().iter().map(|&x| x as usize).collect()
        }
        Err(e) => return Err(e),
    };
    if p.order() == 1 {
        let tuples = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(Vec::new(), 0);
        return Ok(AutGroup {
            min_gens: gens,
            tuples,
            index,
            meta: vec![AutMeta {
                order: 1,
                center_action: vec![0],
            }],
            center_elements: vec![0],
        });
    }

    // invariant buckets
    let key = |x: usize| (p.elem_order(x), p.conjugacy_classes()[p.class_of(x)].len());
    let mut buckets: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for x in 0..p.order() {
        buckets.entry(key(x)).or_default().push(x);
    }
    // order generators so the scarcest candidate lists come first
    let mut gens = gens;
    gens.sort_by_key(|&g| (buckets[&key(g)].len(), g));
    let candidates: Vec<Vec<usize>> = gens.iter().map(|&g| buckets[&key(g)].clone()).collect();

    let center = p.center();
    let center_elements = center.elements().to_vec();
    let z_pos = |x: u32| -> u16 {
        center_elements.binary_search(&x).expect("center element") as u16
    };

    let mut tuples: Vec<Vec<u16>> = Vec::new();
    let mut meta: Vec<AutMeta> = Vec::new();
    let mut nodes: u64 = 0;

    struct Ctx<'a> {
        p: &'a CayleyGroup,
        gens: &'a [usize],
        candidates: &'a [Vec<usize>],
        center_elements: &'a [u32],
    }

    fn dfs(
        ctx: &Ctx,
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        tuples: &mut Vec<Vec<u16>>,
        meta: &mut Vec<AutMeta>,
        z_pos: &impl Fn(u32) -> u16,
    ) -> Result<(), AutError> {
        let depth = chosen.len();
        if depth == ctx.gens.len() {
            return Ok(());
        }
        for &cand in &ctx.candidates[depth] {
            chosen.push(cand);
            *nodes += 1;
            if *nodes > MAX_SEARCH_NODES {
                return Err(AutError::SearchBudgetExceeded { nodes: *nodes });
            }
            if let Some(ext) =
                extend_generator_map(ctx.p, &ctx.gens[..=depth], ctx.p, chosen, true)
            {
                if depth + 1 == ctx.gens.len() {
                    if ext.domain_elements.len() == ctx.p.order() {
                        if tuples.len() >= MAX_AUT_ORDER {
                            return Err(AutError::TooManyAutomorphisms {
                                cap: MAX_AUT_ORDER,
                            });
                        }
                        let perm =
                            Perm::from_images(ext.map).expect("injective cover is a bijection");
                        let center_action: Vec<u16> = ctx
                            .center_elements
                            .iter()
                            .map(|&z| z_pos(perm.apply(z as usize) as u32))
                            .collect();
                        meta.push(AutMeta {
                            order: perm.order() as u32,
                            center_action,
                        });
                        tuples.push(chosen.iter().map(|&x| x as u16).collect());
                    }
                } else {
                    dfs(ctx, chosen, nodes, tuples, meta, z_pos)?;
                }
            }
            chosen.pop();
        }
        Ok(())
    }

    let ctx = Ctx {
        p,
        gens: &gens,
        candidates: &candidates,
        center_elements: &center_elements,
    };
    let mut chosen = Vec::with_capacity(gens.len());
    dfs(&ctx, &mut chosen, &mut nodes, &mut tuples, &mut meta, &z_pos)?;

    // canonical order
    let mut order: Vec<usize> = (0..tuples.len()).collect();
    order.sort_by(|&a, &b| tuples[a].cmp(&tuples[b]));
    let tuples: Vec<Vec<u16>> = order.iter().map(|&i| tuples[i].clone()).collect();
    let meta: Vec<AutMeta> = order.iter().map(|&i| meta[i].clone()).collect();
    let index: HashMap<Vec<u16>, usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    Ok(AutGroup {
        min_gens: gens,
        tuples,
        index,
        meta,
        center_elements,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ComplementShape {
    Cyclic,
    Quaternion8,
    Order24C3ByC8,
    Any,
}

/// A subgroup of Aut(P) acting Frobeniusly and transitively on the
/// nonidentity center, as found by [`frobenius_transitive_subgroups`].
#[derive(Debug, Clone)]
pub struct ComplementWitness {
    pub shape: ComplementShape,
    /// indices of generators within the AutGroup enumeration
    pub generators: Vec<usize>,
    /// all element indices of the subgroup, sorted
    pub elements: Vec<usize>,
}

fn perm_power(p: &[u16], k: usize) -> Vec<u16> {
    let mut out: Vec<u16> = (0..p.len() as u16).collect();
    for _ in 0..k {
        out = out.iter().map(|&i| p[i as usize]).collect();
    }
    out
}

/// Frobenius and transitive on the nonidentity center positions: every
/// listed action must fix only position 0, and the whole set must act
/// with one orbit on the rest.
fn frobenius_transitive_on_center(actions: &[&[u16]], z_size: usize) -> bool {
    for a in actions {
        debug_assert_eq!(a[0], 0);
        if a.iter().enumerate().skip(1).any(|(i, &v)| v as usize == i) {
            return false;
        }
    }
    if z_size <= 1 {
        return true;
    }
    let mut seen = vec![false; z_size];
    seen[1] = true;
    let mut queue = vec![1u16];
    let mut count = 1;
    while let Some(x) = queue.pop() {
        for a in actions {
            let y = a[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                queue.push(y);
            }
        }
    }
    count == z_size - 1
}

/// All subgroups of Aut(P) (given fully enumerated) of order n that act
/// Frobeniusly and transitively on Z(P) minus the identity and match the
/// requested shape. Identical subgroups are listed once; conjugate ones
/// are not merged (the census deduplicates the resulting groups by
/// isomorphism).
pub fn frobenius_transitive_subgroups(
    p: &CayleyGroup,
    aut: &AutGroup,
    n: usize,
    shape: ComplementShape,
) -> Result<Vec<ComplementWitness>, AutError> {
    let z_size = aut.center_elements().len();
    let mut out: Vec<ComplementWitness> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let fpf_on_center = |i: usize| -> bool {
        aut.meta(i)
            .center_action
            .iter()
            .enumerate()
            .skip(1)
            .all(|(pos, &v)| v as usize != pos)
    };

    let want_cyclic = matches!(shape, ComplementShape::Cyclic | ComplementShape::Any);
    let want_q8 =
        n == 8 && matches!(shape, ComplementShape::Quaternion8 | ComplementShape::Any);
    let want_24 =
        n == 24 && matches!(shape, ComplementShape::Order24C3ByC8 | ComplementShape::Any);

    if want_cyclic {
        for i in 0..aut.order() {
            if aut.meta(i).order as usize != n {
                continue;
            }
            // powers of the center action
            let base = &aut.meta(i).center_action;
            let power_actions: Vec<Vec<u16>> =
                (1..n).map(|k| perm_power(base, k)).collect();
            let refs: Vec<&[u16]> = power_actions.iter().map(|v| v.as_slice()).collect();
            if !frobenius_transitive_on_center(&refs, z_size) {
                continue;
            }
            // collect the cyclic subgroup's element indices
            let perm = aut.materialize_perm(p, i);
            let id_tuple: Vec<u16> = aut.min_gens.iter().map(|&g| g as u16).collect();
            let id_idx = aut.index_of(&id_tuple).expect("identity is an automorphism");
            let mut elems = vec![id_idx];
            let mut imgs: Vec<usize> = aut.min_gens.clone();
            for _ in 1..n {
                imgs = imgs.iter().map(|&x| perm.apply(x)).collect();
                let tuple: Vec<u16> = imgs.iter().map(|&x| x as u16).collect();
                elems.push(
                    aut.index_of(&tuple)
                        .expect("powers of an enumerated automorphism are enumerated"),
                );
            }
            elems.sort_unstable();
            elems.dedup();
            if elems.len() != n {
                continue;
            }
            if seen.insert(elems.clone()) {
                out.push(ComplementWitness {
                    shape: ComplementShape::Cyclic,
                    generators: vec![i],
                    elements: elems,
                });
            }
        }
    }

    if want_q8 || want_24 {
        let pair_shapes: Vec<(usize, usize, ComplementShape)> = [
            (want_q8, (4usize, 4usize), ComplementShape::Quaternion8),
            (want_24, (8, 3), ComplementShape::Order24C3ByC8),
        ]
        .into_iter()
        .filter(|(w, _, _)| *w)
        .map(|(_, orders, s)| (orders.0, orders.1, s))
        .collect();
        let id_tuple: Vec<u16> = aut.min_gens.iter().map(|&g| g as u16).collect();
        let id_idx = aut.index_of(&id_tuple).expect("identity is an automorphism");
        for (o1, o2, found_shape) in pair_shapes {
            // every nontrivial element of the subgroup must be
            // fixed-point-free on the nonidentity center, so both
            // generators must be
            let firsts: Vec<usize> = (0..aut.order())
                .filter(|&i| aut.meta(i).order as usize == o1 && fpf_on_center(i))
                .collect();
            let seconds: Vec<usize> = (0..aut.order())
                .filter(|&i| aut.meta(i).order as usize == o2 && fpf_on_center(i))
                .collect();
            for &i in &firsts {
                let pi = aut.materialize_perm(p, i);
                for &j in &seconds {
                    if i == j {
                        continue;
                    }
                    let pj = aut.materialize_perm(p, j);
                    // bounded closure over tuples
                    let subgroup = bounded_tuple_closure(p, aut, &[&pi, &pj], n);
                    let Some(elems) = subgroup else { continue };
                    if seen.contains(&elems) {
                        continue;
                    }
                    // shape check by order profile
                    let profile_ok = match found_shape {
                        ComplementShape::Quaternion8 => {
                            let invs = elems
                                .iter()
                                .filter(|&&e| aut.meta(e).order == 2)
                                .count();
                            invs == 1
                                && elems.iter().filter(|&&e| aut.meta(e).order == 4).count() == 6
                        }
                        ComplementShape::Order24C3ByC8 => {
                            // nonabelian C3-by-C8: an order-8 element,
                            // exactly two of order 3, none of order 24
                            elems.iter().any(|&e| aut.meta(e).order == 8)
                                && elems.iter().filter(|&&e| aut.meta(e).order == 3).count() == 2
                                && elems.iter().all(|&e| aut.meta(e).order != 24)
                        }
                        _ => unreachable!(),
                    };
                    if !profile_ok {
                        continue;
                    }
                    let actions: Vec<&[u16]> = elems
                        .iter()
                        .filter(|&&e| e != id_idx)
                        .map(|&e| aut.meta(e).center_action.as_slice())
                        .collect();
                    if !frobenius_transitive_on_center(&actions, z_size) {
                        continue;
                    }
                    seen.insert(elems.clone());
                    out.push(ComplementWitness {
                        shape: found_shape,
                        generators: vec![i, j],
                        elements: elems,
                    });
                }
            }
        }
    }

    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    Ok(out)
}

/// Closure of automorphism generators inside the enumerated AutGroup,
/// abandoned past `cap` elements. Returns sorted element indices.
fn bounded_tuple_closure(
    _p: &CayleyGroup,
    aut: &AutGroup,
    gens: &[&Perm],
    cap: usize,
) -> Option<Vec<usize>> {
    let id_tuple: Vec<u16> = aut.min_gens.iter().map(|&g| g as u16).collect();
    let id_idx = aut.index_of(&id_tuple)?;
    let mut set: HashSet<usize> = HashSet::new();
    set.insert(id_idx);
    let mut queue = vec![id_idx];
    while let Some(e) = queue.pop() {
        for g in gens {
            // compose: apply e's tuple through g
            let tuple: Vec<u16> = aut.tuples()[e]
                .iter()
                .map(|&x| g.apply(x as usize) as u16)
                .collect();
            let idx = aut.index_of(&tuple)?;
            if set.insert(idx) {
                if set.len() > cap {
                    return None;
                }
                queue.push(idx);
            }
        }
    }
    if set.len() != cap {
        return None;
    }
    let mut v: Vec<usize> = set.into_iter().collect();
    v.sort_unstable();
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, dihedral, elementary_abelian, extraspecial_p3};

    #[test]
    fn minimal_generators() {
        assert_eq!(minimal_generating_set(&cyclic(8)).unwrap().len(), 1);
        assert_eq!(
            minimal_generating_set(&extraspecial_p3(3, 3).unwrap()).unwrap().len(),
            2
        );
        assert_eq!(
            minimal_generating_set(&elementary_abelian(2, 3)).unwrap().len(),
            3
        );
        assert!(minimal_generating_set(&cyclic(6)).is_err());
    }

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(automorphism_group(&cyclic(3)).unwrap().order(), 2);
        // GL(2,2) has order 6
        assert_eq!(
            automorphism_group(&elementary_abelian(2, 2)).unwrap().order(),
            6
        );
        // Aut(D8) = D8
        assert_eq!(automorphism_group(&dihedral(8)).unwrap().order(), 8);
    }

    #[test]
    fn extraspecial27_aut_order_matches_oracle() {
        // oracle: count all ordered generator-image pairs that extend to
        // an automorphism, over all candidate pairs at order 27
        let p = extraspecial_p3(3, 3).unwrap();
        let gens = minimal_generating_set(&p).unwrap();
        assert_eq!(gens.len(), 2);
        let mut count = 0usize;
        for a in 0..27 {
            for b in 0..27 {
                if let Some(ext) = extend_generator_map(&p, &gens, &p, &[a, b], true) {
                    if ext.domain_elements.len() == 27 {
                        count += 1;
                    }
                }
            }
        }
        let aut = automorphism_group(&p).unwrap();
        assert_eq!(aut.order(), count);
        assert_eq!(aut.order(), 432);
    }

    #[test]
    fn inner_automorphisms_are_found() {
        let p = extraspecial_p3(3, 3).unwrap();
        let aut = automorphism_group(&p).unwrap();
        let mut inner: HashSet<Vec<u16>> = HashSet::new();
        for x in 0..p.order() {
            let t = aut.inner_tuple(&p, x);
            assert!(aut.index_of(&t).is_some(), "inner map accepted by search");
            inner.insert(t);
        }
        assert_eq!(inner.len(), p.order() / p.center().order());
    }

    #[test]
    fn aut_as_permutation_group() {
        let p = elementary_abelian(2, 2);
        let aut = automorphism_group(&p).unwrap();
        let pg = aut.permutation_group(&p);
        assert_eq!(pg.order(), 6);
    }

    #[test]
    fn cyclic_complements_of_extraspecial() {
        // order-2 automorphisms of the order-27 exponent-3 group acting
        // Frobeniusly and transitively on the 2 nonidentity center points
        let p = extraspecial_p3(3, 3).unwrap();
        let aut = automorphism_group(&p).unwrap();
        let found =
            frobenius_transitive_subgroups(&p, &aut, 2, ComplementShape::Cyclic).unwrap();
        assert!(!found.is_empty());
        // no quaternion subgroups of order 2
        let q8 = frobenius_transitive_subgroups(&p, &aut, 2, ComplementShape::Quaternion8)
            .unwrap();
        assert!(q8.is_empty());
    }
}
