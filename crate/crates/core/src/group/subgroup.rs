//! Subgroups as element-index sets, with the structural computations
//! built on them: closures, the normal subgroup lattice, centers and
//! central series, Sylow subgroups, and quotient groups.

use super::cayley::{CayleyGroup, Nilpotence};
use super::GroupError;

/// A subgroup of a Cayley-backed parent, stored as a sorted index set
/// together with the generating set that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupHandle {
    parent_order: usize,
    elements: Vec<u32>,
    gens: Vec<u32>,
}

impl SubgroupHandle {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&(g as u32)).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent_order
    }

    /// Set containment (both handles must share a parent).
    pub fn contains_subgroup(&self, other: &SubgroupHandle) -> bool {
        other.elements.iter().all(|&g| self.contains(g as usize))
    }

    /// Verifies closure under multiplication and inverses.
    pub fn validate(&self, g: &CayleyGroup) -> Result<(), GroupError> {
        if self.parent_order != g.order() {
            return Err(GroupError::ParentMismatch {
                expected: self.parent_order,
                got: g.order(),
            });
        }
        if !self.contains(0) {
            return Err(GroupError::InvalidSubgroup("missing identity".into()));
        }
        for &a in &self.elements {
            if !self.contains(g.inv(a as usize)) {
                return Err(GroupError::InvalidSubgroup(format!(
                    "not closed under inverse at {a}"
                )));
            }
            for &b in &self.elements {
                if !self.contains(g.mul(a as usize, b as usize)) {
                    return Err(GroupError::InvalidSubgroup(format!(
                        "not closed under product at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Closure of a seed set under multiplication (inverses come free in a
/// finite group). Seeds already inside the running closure are dropped
/// from the recorded generating set.
pub fn closure(g: &CayleyGroup, seeds: &[usize]) -> SubgroupHandle {
    let mut in_sub = vec![false; g.order()];
    in_sub[0] = true;
    let mut elems: Vec<u32> = vec![0];
    let mut gens: Vec<u32> = Vec::new();
    for &s in seeds {
        if in_sub[s] {
            continue;
        }
        gens.push(s as u32);
        let mut queue: Vec<usize> = elems.iter().map(|&x| x as usize).collect();
        while let Some(x) = queue.pop() {
            for &t in &gens {
                let y = g.mul(x, t as usize);
                if !in_sub[y] {
                    in_sub[y] = true;
                    elems.push(y as u32);
                    queue.push(y);
                }
            }
        }
    }
    elems.sort_unstable();
    SubgroupHandle {
        parent_order: g.order(),
        elements: elems,
        gens,
    }
}

/// Smallest normal subgroup of the parent containing the seeds.
pub fn normal_closure(g: &CayleyGroup, seeds: &[usize]) -> SubgroupHandle {
    let ggens = g.generating_set().to_vec();
    let mut gens: Vec<usize> = seeds.to_vec();
    loop {
        let h = closure(g, &gens);
        let mut grew = false;
        for &s in h.gens() {
            for &t in &ggens {
                let c = g.conjugate(s as usize, t as usize);
                if !h.contains(c) {
                    gens.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return h;
        }
    }
}

pub fn trivial_subgroup(g: &CayleyGroup) -> SubgroupHandle {
    SubgroupHandle {
        parent_order: g.order(),
        elements: vec![0],
        gens: Vec::new(),
    }
}

pub fn whole_group(g: &CayleyGroup) -> SubgroupHandle {
    let gens = g.generating_set().to_vec();
    SubgroupHandle {
        parent_order: g.order(),
        elements: (0..g.order() as u32).collect(),
        gens,
    }
}

/// Is `h` normal in its parent? Conjugates of generators suffice.
pub fn is_normal(g: &CayleyGroup, h: &SubgroupHandle) -> bool {
    g.generating_set().iter().all(|&t| {
        h.gens()
            .iter()
            .all(|&s| h.contains(g.conjugate(s as usize, t as usize)))
    })
}

impl CayleyGroup {
    /// Elements commuting with everything.
    pub fn center(&self) -> SubgroupHandle {
        let gens = self.generating_set();
        let elems: Vec<u32> = (0..self.order() as u32)
            .filter(|&z| {
                gens.iter().all(|&t| {
                    self.mul(z as usize, t as usize) == self.mul(t as usize, z as usize)
                })
            })
            .collect();
        SubgroupHandle {
            parent_order: self.order(),
            gens: elems.clone(),
            elements: elems,
        }
    }

    /// Centralizer of a single element.
    pub fn centralizer(&self, x: usize) -> SubgroupHandle {
        let elems: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| self.mul(g as usize, x) == self.mul(x, g as usize))
            .collect();
        let gens = elems.clone();
        SubgroupHandle {
            parent_order: self.order(),
            elements: elems,
            gens,
        }
    }

    /// Centralizer of a subgroup.
    pub fn centralizer_of(&self, h: &SubgroupHandle) -> SubgroupHandle {
        let elems: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| {
                h.gens().iter().all(|&s| {
                    self.mul(g as usize, s as usize) == self.mul(s as usize, g as usize)
                })
            })
            .collect();
        let gens = elems.clone();
        SubgroupHandle {
            parent_order: self.order(),
            elements: elems,
            gens,
        }
    }

    /// Normalizer of a subgroup.
    pub fn normalizer_of(&self, h: &SubgroupHandle) -> SubgroupHandle {
        let elems: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| {
                h.gens()
                    .iter()
                    .all(|&s| h.contains(self.conjugate(s as usize, g as usize)))
            })
            .collect();
        let gens = elems.clone();
        SubgroupHandle {
            parent_order: self.order(),
            elements: elems,
            gens,
        }
    }

    /// Derived subgroup: the normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> SubgroupHandle {
        let gens = self.generating_set();
        let mut comms = Vec::new();
        for &a in gens {
            for &b in gens {
                let c = self.commutator(a as usize, b as usize);
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        normal_closure(self, &comms)
    }

    /// Derived subgroup of a subgroup, computed inside the parent table.
    pub fn derived_of_subgroup(&self, h: &SubgroupHandle) -> SubgroupHandle {
        let mut comms: Vec<usize> = Vec::new();
        for &a in h.gens() {
            for &b in h.gens() {
                let c = self.commutator(a as usize, b as usize);
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        // normal closure under conjugation by h's generators
        let mut gens = comms;
        loop {
            let k = closure(self, &gens);
            let mut grew = false;
            for &s in k.gens() {
                for &t in h.gens() {
                    let c = self.conjugate(s as usize, t as usize);
                    if !k.contains(c) {
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return k;
            }
        }
    }

    /// Descending series `G = γ₁ ≥ γ₂ = [G, G] ≥ [γ₂, G] ≥ ...` until it
    /// stabilizes. The last entry repeats no predecessor.
    pub fn lower_central_series(&self) -> Vec<SubgroupHandle> {
        let mut series = vec![whole_group(self)];
        let ggens = self.generating_set().to_vec();
        loop {
            let cur = series.last().unwrap();
            let mut comms = Vec::new();
            for &a in cur.gens() {
                for &t in &ggens {
                    let c = self.commutator(a as usize, t as usize);
                    if c != 0 {
                        comms.push(c);
                    }
                }
            }
            let next = normal_closure(self, &comms);
            if next.order() == cur.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Ascending series `1 < Z(G) < Z₂(G) < ...` until it stabilizes.
    pub fn upper_central_series(&self) -> Vec<SubgroupHandle> {
        let ggens = self.generating_set().to_vec();
        let mut series = vec![trivial_subgroup(self)];
        loop {
            let cur = series.last().unwrap();
            let elems: Vec<u32> = (0..self.order() as u32)
                .filter(|&x| {
                    ggens
                        .iter()
                        .all(|&t| cur.contains(self.commutator(x as usize, t as usize)))
                })
                .collect();
            if elems.len() == cur.order() {
                return series;
            }
            let gens = elems.clone();
            series.push(SubgroupHandle {
                parent_order: self.order(),
                elements: elems,
                gens,
            });
        }
    }

    /// Second center `Z₂(G)`.
    pub fn second_center(&self) -> SubgroupHandle {
        let ucs = self.upper_central_series();
        match ucs.len() {
            0 | 1 => trivial_subgroup(self),
            2 => ucs.into_iter().nth(1).unwrap(),
            _ => ucs.into_iter().nth(2).unwrap(),
        }
    }

    pub fn nilpotence_class(&self) -> Nilpotence {
        let lcs = self.lower_central_series();
        if lcs.last().unwrap().is_trivial() {
            Nilpotence::Class(lcs.len() - 1)
        } else {
            Nilpotence::NotNilpotent
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generating_set();
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| self.mul(a as usize, b as usize) == self.mul(b as usize, a as usize))
        })
    }

    pub fn is_solvable(&self) -> bool {
        let mut cur = whole_group(self);
        loop {
            let next = self.derived_of_subgroup(&cur);
            if next.order() == 1 {
                return true;
            }
            if next.order() == cur.order() {
                return false;
            }
            cur = next;
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Frattini subgroup of a p-group: derived subgroup joined with p-th powers.
    pub fn frattini_of_p_group(&self, p: u64) -> Result<SubgroupHandle, GroupError> {
        let (q, _) = crate::arith::is_prime_power(self.order() as u64)
            .filter(|&(q, _)| q == p)
            .ok_or(GroupError::NotPGroup { order: self.order(), p })?;
        debug_assert_eq!(q, p);
        let mut seeds: Vec<usize> = self
            .derived_subgroup()
            .gens()
            .iter()
            .map(|&x| x as usize)
            .collect();
        for g in 0..self.order() {
            let gp = self.power(g, p as i64);
            if gp != 0 {
                seeds.push(gp);
            }
        }
        Ok(normal_closure(self, &seeds))
    }

    /// All normal subgroups, built as closures of single conjugacy classes
    /// followed by join saturation. Sorted by (order, elements).
    pub fn normal_subgroup_lattice(&self) -> Vec<SubgroupHandle> {
        let classes = self.conjugacy_classes();
        let mut found: Vec<SubgroupHandle> = vec![trivial_subgroup(self)];
        let push_unique = |list: &mut Vec<SubgroupHandle>, h: SubgroupHandle| -> bool {
            if list.iter().any(|k| k.elements == h.elements) {
                false
            } else {
                list.push(h);
                true
            }
        };
        for c in classes {
            let seeds: Vec<usize> = c.iter().map(|&x| x as usize).collect();
            let h = closure(self, &seeds);
            push_unique(&mut found, h);
        }
        // saturate under pairwise joins
        loop {
            let mut grew = false;
            let snapshot = found.clone();
            for i in 0..snapshot.len() {
                for j in (i + 1)..snapshot.len() {
                    let mut seeds: Vec<usize> =
                        snapshot[i].gens().iter().map(|&x| x as usize).collect();
                    seeds.extend(snapshot[j].gens().iter().map(|&x| x as usize));
                    let join = closure(self, &seeds);
                    if push_unique(&mut found, join) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        found.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        debug_assert!(found.iter().all(|h| is_normal(self, h)));
        found
    }

    /// Minimal normal subgroups: inclusion-minimal closures of nontrivial
    /// classes. Every minimal normal subgroup is generated by any one of
    /// its nontrivial classes, so no joins are needed.
    pub fn minimal_normal_subgroups(&self) -> Vec<SubgroupHandle> {
        let classes = self.conjugacy_classes();
        let mut candidates: Vec<SubgroupHandle> = Vec::new();
        for c in classes.iter().skip(1) {
            let seeds: Vec<usize> = c.iter().map(|&x| x as usize).collect();
            let h = closure(self, &seeds);
            if candidates.iter().any(|k| k.elements == h.elements) {
                continue;
            }
            candidates.push(h);
        }
        let minimal: Vec<SubgroupHandle> = candidates
            .iter()
            .filter(|h| {
                !candidates
                    .iter()
                    .any(|k| k.order() < h.order() && h.contains_subgroup(k) && k.order() > 1)
            })
            .cloned()
            .collect();
        let mut minimal = minimal;
        minimal.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        minimal
    }

    /// Join of the minimal normal subgroups.
    pub fn socle(&self) -> SubgroupHandle {
        let mins = self.minimal_normal_subgroups();
        let seeds: Vec<usize> = mins
            .iter()
            .flat_map(|h| h.gens().iter().map(|&x| x as usize))
            .collect();
        closure(self, &seeds)
    }

    /// Largest normal p-subgroup: the join of all class closures of
    /// p-power order that are themselves p-groups, saturated.
    pub fn p_core(&self, p: u64) -> SubgroupHandle {
        let is_p_power = |n: usize| -> bool {
            n == 1 || crate::arith::is_prime_power(n as u64).map_or(false, |(q, _)| q == p)
        };
        let classes = self.conjugacy_classes();
        let mut core = trivial_subgroup(self);
        for c in classes.iter().skip(1) {
            if !is_p_power(self.elem_order(c[0] as usize)) {
                continue;
            }
            let seeds: Vec<usize> = c.iter().map(|&x| x as usize).collect();
            let h = closure(self, &seeds);
            if !is_p_power(h.order()) {
                continue;
            }
            if core.contains_subgroup(&h) {
                continue;
            }
            let mut seeds: Vec<usize> = core.gens().iter().map(|&x| x as usize).collect();
            seeds.extend(h.gens().iter().map(|&x| x as usize));
            let join = closure(self, &seeds);
            if is_p_power(join.order()) {
                core = join;
            }
        }
        core
    }

    /// A Sylow p-subgroup, grown by normalizer climbing from a cyclic
    /// p-subgroup.
    pub fn sylow(&self, p: u64) -> Result<SubgroupHandle, GroupError> {
        if self.order() as u64 % p != 0 {
            return Err(GroupError::PrimeDoesNotDivide { p, order: self.order() });
        }
        let mut target = 1usize;
        let mut n = self.order() as u64;
        while n % p == 0 {
            n /= p;
            target *= p as usize;
        }
        // seed with any element of order p
        let seed = (0..self.order())
            .find(|&g| self.elem_order(g) == p as usize)
            .expect("Cauchy: an element of order p exists");
        let mut sub = closure(self, &[seed]);
        while sub.order() < target {
            let norm = self.normalizer_of(&sub);
            let next = norm.elements().iter().copied().find(|&y| {
                let y = y as usize;
                !sub.contains(y)
                    && crate::arith::is_prime_power(self.elem_order(y) as u64)
                        .map_or(false, |(q, _)| q == p)
            });
            let y = next.expect("a p-subgroup below Sylow order grows inside its normalizer");
            let mut seeds: Vec<usize> = sub.gens().iter().map(|&x| x as usize).collect();
            seeds.push(y as usize);
            sub = closure(self, &seeds);
        }
        Ok(sub)
    }

    /// Quotient by a normal subgroup; cosets are labelled by their least
    /// element, with the identity coset at index 0.
    pub fn quotient(&self, n: &SubgroupHandle) -> Result<CayleyGroup, GroupError> {
        self.quotient_with_map(n).map(|(q, _)| q)
    }

    /// Like [`Self::quotient`], also returning the projection from parent
    /// element indices to coset indices.
    pub fn quotient_with_map(
        &self,
        n: &SubgroupHandle,
    ) -> Result<(CayleyGroup, Vec<u32>), GroupError> {
        n.validate(self)?;
        if !is_normal(self, n) {
            return Err(GroupError::NotNormal);
        }
        let order = self.order();
        let mut coset_rep = vec![u32::MAX; order];
        let mut reps: Vec<u32> = Vec::with_capacity(order / n.order());
        for x in 0..order {
            if coset_rep[x] != u32::MAX {
                continue;
            }
            // x is the least element of its coset (scanning ascending)
            for &m in n.elements() {
                coset_rep[self.mul(x, m as usize)] = x as u32;
            }
            reps.push(x as u32);
        }
        let index_of = {
            let mut v = vec![u32::MAX; order];
            for (i, &r) in reps.iter().enumerate() {
                v[r as usize] = i as u32;
            }
            v
        };
        let k = reps.len();
        let mut flat = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                let c = coset_rep[self.mul(a as usize, b as usize)];
                flat.push(index_of[c as usize] as super::cayley::El);
            }
        }
        let projection: Vec<u32> = (0..order)
            .map(|x| index_of[coset_rep[x] as usize])
            .collect();
        Ok((CayleyGroup::from_flat_table(k, flat)?, projection))
    }

    /// Extracts a subgroup as a standalone group, returning the group and
    /// the map from its indices back to parent indices.
    pub fn subgroup_as_group(
        &self,
        h: &SubgroupHandle,
    ) -> Result<(CayleyGroup, Vec<usize>), GroupError> {
        h.validate(self)?;
        let elems: Vec<usize> = h.elements().iter().map(|&x| x as usize).collect();
        let mut index_of = vec![u32::MAX; self.order()];
        for (i, &e) in elems.iter().enumerate() {
            index_of[e] = i as u32;
        }
        let k = elems.len();
        let mut flat = Vec::with_capacity(k * k);
        for &a in &elems {
            for &b in &elems {
                flat.push(index_of[self.mul(a, b)] as super::cayley::El);
            }
        }
        Ok((CayleyGroup::from_flat_table(k, flat)?, elems))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, dihedral, elementary_abelian, quaternion8};

    #[test]
    fn center_of_d8() {
        // brute-force oracle over all 8 elements
        let d8 = dihedral(8);
        let brute: Vec<usize> = (0..8)
            .filter(|&z| (0..8).all(|x| d8.mul(z, x) == d8.mul(x, z)))
            .collect();
        assert_eq!(brute.len(), 2);
        assert_eq!(d8.center().order(), 2);
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(cyclic(6).derived_subgroup().order(), 1);
        assert_eq!(dihedral(8).derived_subgroup().order(), 2);
        assert_eq!(quaternion8().derived_subgroup().order(), 2);
    }

    #[test]
    fn q8_normal_lattice() {
        // brute-force oracle: closures of all subsets of size <= 2 and a
        // normality scan; Q8 has 6 normal subgroups (all subgroups normal)
        let q8 = quaternion8();
        let mut all = std::collections::BTreeSet::new();
        for a in 0..8 {
            for b in 0..8 {
                let h = closure(&q8, &[a, b]);
                if is_normal(&q8, &h) {
                    all.insert(h.elements().to_vec());
                }
            }
        }
        assert_eq!(all.len(), 6);
        assert_eq!(q8.normal_subgroup_lattice().len(), 6);
        assert_eq!(dihedral(8).normal_subgroup_lattice().len(), 6);
    }

    #[test]
    fn quotient_orders_multiply() {
        let d8 = dihedral(8);
        for n in d8.normal_subgroup_lattice() {
            let q = d8.quotient(&n).unwrap();
            assert_eq!(q.order() * n.order(), d8.order());
        }
        // D8 / Z(D8) is the Klein four group
        let q = d8.quotient(&d8.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.exponent(), 2);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let d8 = dihedral(8);
        // a reflection generates a non-normal order-2 subgroup
        let refl = (0..8)
            .map(|x| closure(&d8, &[x]))
            .find(|h| h.order() == 2 && !is_normal(&d8, h))
            .unwrap();
        assert!(d8.quotient(&refl).is_err());
    }

    #[test]
    fn socle_and_p_core() {
        let v4 = elementary_abelian(2, 2);
        assert_eq!(v4.socle().order(), 4);
        let d8 = dihedral(8);
        assert_eq!(d8.p_core(2).order(), 8);
    }

    #[test]
    fn sylow_subgroups() {
        let c6 = cyclic(6);
        assert_eq!(c6.sylow(3).unwrap().order(), 3);
        assert_eq!(c6.sylow(2).unwrap().order(), 2);
        assert!(c6.sylow(5).is_err());
    }

    #[test]
    fn central_series_agree_on_p_groups() {
        for g in [dihedral(8), quaternion8(), dihedral(16)] {
            let lcs = g.lower_central_series();
            let ucs = g.upper_central_series();
            assert!(lcs.last().unwrap().is_trivial());
            assert!(ucs.last().unwrap().is_whole());
            assert_eq!(lcs.len(), ucs.len());
            assert_eq!(g.nilpotence_class(), Nilpotence::Class(lcs.len() - 1));
        }
    }

    #[test]
    fn solvability() {
        assert!(dihedral(8).is_solvable());
        assert!(cyclic(12).is_solvable());
        assert!(!dihedral(8).is_perfect());
    }
}
