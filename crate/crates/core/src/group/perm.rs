//! Generator-based permutation groups with a base and strong generating
//! set. Carries the coset-enumeration images and automorphism groups,
//! where materializing a multiplication table is out of the question.

use once_cell::sync::OnceCell;

use super::GroupError;

/// A permutation of `0..degree` in one-line form. `apply(i) = images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &v) in images.iter().enumerate() {
            if v as usize >= n {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {v} of point {i} out of range 0..{n}"
                )));
            }
            if seen[v as usize] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {v} repeated (at point {i})"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Perm { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Function composition: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Perm { images }
    }

    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord: u64 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = super::cayley::lcm(ord, len);
        }
        ord
    }
}

/// One level of the stabilizer chain: the point, the generators of the
/// current stabilizer, and a Schreier vector for the fundamental orbit.
#[derive(Debug, Clone)]
struct Level {
    point: u32,
    gens: Vec<Perm>,
    /// orbit in BFS discovery order
    orbit: Vec<u32>,
    /// sv[x]: index into `gens` of the generator whose inverse steps x
    /// back toward the base point; -1 at the base point, -2 off-orbit
    sv: Vec<i32>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            sv: vec![-2; degree],
        }
    }

    fn recompute_orbit(&mut self) {
        self.sv.iter_mut().for_each(|s| *s = -2);
        self.orbit.clear();
        self.orbit.push(self.point);
        self.sv[self.point as usize] = -1;
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head] as usize;
            head += 1;
            for (gi, g) in self.gens.iter().enumerate() {
                let y = g.apply(x);
                if self.sv[y] == -2 {
                    self.sv[y] = gi as i32;
                    self.orbit.push(y as u32);
                }
            }
        }
    }

    fn in_orbit(&self, x: usize) -> bool {
        self.sv[x] != -2
    }

    /// Replaces `p` by `u^{-1} p` where `u` is the transversal element
    /// with `u(point) = p(point)`, by walking the Schreier vector.
    fn strip_one(&self, p: Perm) -> Perm {
        let mut p = p;
        let mut x = p.apply(self.point as usize);
        while x as u32 != self.point {
            let gi = self.sv[x];
            debug_assert!(gi >= 0);
            let g = &self.gens[gi as usize];
            p = g.inverse().compose(&p);
            x = p.apply(self.point as usize);
        }
        p
    }
}

#[derive(Debug, Clone)]
struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            if !g.is_identity() {
                chain.extend_with(g.clone());
            }
        }
        chain
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `p` through the chain; identity residue means membership.
    fn sift(&self, p: &Perm) -> Perm {
        let mut r = p.clone();
        for level in &self.levels {
            if r.is_identity() {
                return r;
            }
            let x = r.apply(level.point as usize);
            if !level.in_orbit(x) {
                return r;
            }
            r = level.strip_one(r);
        }
        r
    }

    fn contains(&self, p: &Perm) -> bool {
        self.sift(p).is_identity()
    }

    /// Adds one generator and restores the strong-generating invariant.
    fn extend_with(&mut self, p: Perm) {
        let r = self.sift(&p);
        if r.is_identity() {
            return;
        }
        let j = self.insert_residue_at(0, r);
        self.verify_from(j);
    }

    /// Places a sifted residue: it becomes a strong generator for every
    /// level from `floor` down to the first base point it moves (a fresh
    /// level if it fixes the whole base). Returns that deepest level.
    fn insert_residue_at(&mut self, floor: usize, r: Perm) -> usize {
        let mut j = floor;
        while j < self.levels.len() {
            if r.apply(self.levels[j].point as usize) as u32 != self.levels[j].point {
                break;
            }
            j += 1;
        }
        if j == self.levels.len() {
            let moved = (0..self.degree)
                .find(|&x| r.apply(x) != x)
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(moved as u32, self.degree));
        }
        for t in floor..=j {
            self.levels[t].gens.push(r.clone());
            self.levels[t].recompute_orbit();
        }
        j
    }

    /// Re-establishes, from level `start` toward the root, that every
    /// Schreier generator sifts to the identity through the deeper chain,
    /// inserting residues as it goes. Deeper levels regain the invariant
    /// by restarting from the bottom whenever something is inserted.
    fn verify_from(&mut self, start: usize) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = start.min(self.levels.len() - 1) as isize;
        while i >= 0 {
            match self.verify_level(i as usize) {
                None => i -= 1,
                Some((floor, residue)) => {
                    self.insert_residue_at(floor, residue);
                    i = self.levels.len() as isize - 1;
                }
            }
        }
    }

    /// Scans all Schreier generators of one level. Returns the first
    /// failing residue with the level it should be inserted at, or None
    /// when the level is verified.
    fn verify_level(&mut self, li: usize) -> Option<(usize, Perm)> {
        self.levels[li].recompute_orbit();
        let level = &self.levels[li];
        // transversal cache in BFS discovery order: u_y = g . u_x
        let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
        transversal[level.point as usize] = Some(Perm::identity(self.degree));
        for &x in &level.orbit {
            if transversal[x as usize].is_none() {
                let gi = level.sv[x as usize];
                debug_assert!(gi >= 0);
                let g = &level.gens[gi as usize];
                let prev = g.inverse().apply(x as usize);
                let u = g.compose(transversal[prev].as_ref().expect("BFS order"));
                transversal[x as usize] = Some(u);
            }
        }
        for &x in &level.orbit {
            let u = transversal[x as usize].as_ref().unwrap();
            for g in &level.gens {
                let gx = g.apply(x as usize);
                let v = transversal[gx].as_ref().unwrap();
                let schreier = v.inverse().compose(g).compose(u);
                if schreier.is_identity() {
                    continue;
                }
                // sift through the chain strictly below this level
                let mut r = schreier;
                let mut ok = true;
                for deeper in &self.levels[li + 1..] {
                    let y = r.apply(deeper.point as usize);
                    if !deeper.in_orbit(y) {
                        ok = false;
                        break;
                    }
                    r = deeper.strip_one(r);
                    if r.is_identity() {
                        break;
                    }
                }
                if !ok || !r.is_identity() {
                    return Some((li + 1, r));
                }
            }
        }
        None
    }
}

/// A permutation group given by generators, with a lazily built
/// base/strong-generating-set chain for order and membership queries.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceCell<StabChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator of degree {} in a group of degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        Ok(PermutationGroup {
            degree,
            gens,
            chain: OnceCell::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.gens))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        self.chain().contains(p)
    }

    /// Orbit of a point under the generator action.
    pub fn orbit(&self, start: usize) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![start as u32];
        seen[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head] as usize;
            head += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y as u32);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    /// Smallest subgroup containing `self` that is normalized by `outer`.
    pub fn normal_closure_under(&self, outer: &[Perm]) -> PermutationGroup {
        let mut gens = self.gens.clone();
        gens.retain(|g| !g.is_identity());
        let mut chain = StabChain::build(self.degree, &gens);
        loop {
            let mut grew = false;
            let snapshot = gens.clone();
            for s in &snapshot {
                for t in outer {
                    let c = t.inverse().compose(s).compose(t);
                    if !chain.contains(&c) {
                        chain.extend_with(c.clone());
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let g = PermutationGroup {
            degree: self.degree,
            gens,
            chain: OnceCell::new(),
        };
        let _ = g.chain.set(chain);
        g
    }

    /// `[G, G]` as the normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> PermutationGroup {
        let mut comms = Vec::new();
        for a in &self.gens {
            for b in &self.gens {
                let c = a
                    .inverse()
                    .compose(&b.inverse())
                    .compose(a)
                    .compose(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        let seed = PermutationGroup {
            degree: self.degree,
            gens: comms,
            chain: OnceCell::new(),
        };
        seed.normal_closure_under(&self.gens)
    }

    pub fn is_solvable(&self) -> bool {
        let mut cur = self.clone();
        let mut cur_order = cur.order();
        loop {
            if cur_order == 1 {
                return true;
            }
            let next = cur.derived_subgroup();
            let next_order = next.order();
            if next_order == cur_order {
                return false;
            }
            cur = next;
            cur_order = next_order;
        }
    }

    pub fn is_perfect(&self) -> bool {
        let order = self.order();
        order == self.derived_subgroup().order()
    }
}
