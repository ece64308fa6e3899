//! Coset enumeration: relator scanning with eager coset definition,
//! coincidence processing through a union-find with path compression,
//! a definition-free lookahead pass when the table fills, and a compact
//! rebuild on completion. A completed table certifies the subgroup
//! index; hitting the coset bound is an explicit outcome, never a wrong
//! index.

use std::collections::VecDeque;

use super::parse::FpPresentation;
use super::FpError;
use crate::group::{Perm, PermutationGroup};

const UNDEF: u32 = u32::MAX;

/// A complete coset table: `rows x 2*ngens` with columns alternating
/// generator, inverse. Row 0 is the subgroup coset.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub ngens: usize,
    pub rows: Vec<Vec<u32>>,
    /// total cosets ever defined during the run, for reporting
    pub cosets_defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    /// The generators as permutations of the cosets.
    pub fn perm_rep(&self) -> Result<PermutationGroup, FpError> {
        let n = self.rows.len();
        let mut gens = Vec::with_capacity(self.ngens);
        for g in 0..self.ngens {
            let images: Vec<u32> = (0..n).map(|r| self.rows[r][2 * g]).collect();
            let perm = Perm::from_images(images)
                .map_err(|e| FpError::Internal(format!("column {g} is not a permutation: {e}")))?;
            gens.push(perm);
        }
        PermutationGroup::new(n, gens).map_err(|e| FpError::Internal(e.to_string()))
    }

    /// Every entry defined, inverse columns paired, and every relator
    /// closed from every coset.
    pub fn validate(&self, pres: &FpPresentation) -> Result<(), FpError> {
        let width = 2 * pres.generators.len();
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != width
                || row.iter().any(|&e| e == UNDEF || e as usize >= self.rows.len())
            {
                return Err(FpError::Internal(format!("row {r} is not closed")));
            }
            for c in 0..width {
                let d = row[c] as usize;
                if self.rows[d][c ^ 1] as usize != r {
                    return Err(FpError::Internal(format!(
                        "inverse pairing broken at ({r}, {c})"
                    )));
                }
            }
        }
        for rel in &pres.relators {
            for r in 0..self.rows.len() {
                let mut c = r;
                for &l in rel {
                    c = self.rows[c][l as usize] as usize;
                }
                if c != r {
                    return Err(FpError::Internal(format!(
                        "relator does not close from coset {r}"
                    )));
                }
            }
        }
        Ok(())
    }
}

struct Enumerator {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    alive: usize,
    defined_total: usize,
    max_cosets: usize,
    merge_queue: VecDeque<u32>,
}

impl Enumerator {
    fn new(width: usize, max_cosets: usize) -> Self {
        let mut e = Enumerator {
            width,
            table: Vec::new(),
            parent: Vec::new(),
            alive: 0,
            defined_total: 0,
            max_cosets,
            merge_queue: VecDeque::new(),
        };
        e.new_coset();
        e
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn new_coset(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.table.extend(std::iter::repeat(UNDEF).take(self.width));
        self.alive += 1;
        self.defined_total += 1;
        id
    }

    #[inline]
    fn entry(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.width + col]
    }

    #[inline]
    fn set_entry(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.width + col] = v;
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let up = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = up;
            c = up;
        }
        c
    }

    fn is_alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (s, d) = if a < b { (a, b) } else { (b, a) };
        self.parent[d as usize] = s;
        self.alive -= 1;
        self.merge_queue.push_back(d);
    }

    fn process_coincidences(&mut self) {
        while let Some(dead) = self.merge_queue.pop_front() {
            for col in 0..self.width {
                let e = self.entry(dead, col);
                if e == UNDEF {
                    continue;
                }
                self.set_entry(dead, col, UNDEF);
                // drop the reverse edge that pointed back at the dead coset
                if self.entry(e, col ^ 1) == dead {
                    self.set_entry(e, col ^ 1, UNDEF);
                }
                let s = self.rep(dead);
                let f = self.rep(e);
                let existing = self.entry(s, col);
                if existing != UNDEF {
                    let ex = self.rep(existing);
                    self.merge(ex, f);
                } else {
                    let back = self.entry(f, col ^ 1);
                    if back != UNDEF {
                        let bk = self.rep(back);
                        self.merge(bk, s);
                    } else {
                        self.set_entry(s, col, f);
                        self.set_entry(f, col ^ 1, s);
                    }
                }
            }
        }
    }

    /// One relator scan from one coset. With `fill` set, gaps of two or
    /// more are filled by defining new cosets (classic HLT); without it
    /// the scan only applies deductions and coincidences. `i` counts the
    /// letters consumed from the left, `jj` is one past the letters not
    /// yet consumed from the right.
    fn scan(&mut self, start: u32, word: &[u32], fill: bool) -> Result<(), FpError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = self.rep(start);
        let mut b = f;
        let mut i = 0usize;
        let mut jj = word.len();
        loop {
            while i < jj {
                let next = self.entry(f, word[i] as usize);
                if next == UNDEF {
                    break;
                }
                f = self.rep(next);
                i += 1;
            }
            if i == jj {
                if f != b {
                    self.merge(f, b);
                    self.process_coincidences();
                }
                return Ok(());
            }
            while jj > i {
                let col = (word[jj - 1] ^ 1) as usize;
                let prev = self.entry(b, col);
                if prev == UNDEF {
                    break;
                }
                b = self.rep(prev);
                jj -= 1;
            }
            if jj == i {
                // met in the middle with everything defined
                if f != b {
                    self.merge(f, b);
                    self.process_coincidences();
                }
                return Ok(());
            }
            if jj == i + 1 {
                // gap of one: deduction closes the cycle
                self.set_entry(f, word[i] as usize, b);
                self.set_entry(b, (word[i] ^ 1) as usize, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            if self.rows() >= self.max_cosets {
                return Err(FpError::BoundExceeded {
                    max_cosets: self.max_cosets,
                });
            }
            let fresh = self.new_coset();
            self.set_entry(f, word[i] as usize, fresh);
            self.set_entry(fresh, (word[i] ^ 1) as usize, f);
            f = fresh;
            i += 1;
        }
    }

    /// Deduction-only sweep over all live cosets.
    fn lookahead(&mut self, relators: &[Vec<u32>]) {
        let mut alpha = 0u32;
        while (alpha as usize) < self.parent.len() {
            if self.is_alive(alpha) {
                for word in relators {
                    self.scan(alpha, word, false).expect("no-fill scans cannot overflow");
                    if !self.is_alive(alpha) {
                        break;
                    }
                }
            }
            alpha += 1;
        }
    }

    /// Renumbers live cosets ascending and drops dead rows; returns the
    /// remap table.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.parent.len();
        let mut remap = vec![UNDEF; n];
        let mut next = 0u32;
        for c in 0..n as u32 {
            if self.is_alive(c) {
                remap[c as usize] = next;
                next += 1;
            }
        }
        let mut new_table = vec![UNDEF; next as usize * self.width];
        for c in 0..n as u32 {
            if !self.is_alive(c) {
                continue;
            }
            let nc = remap[c as usize] as usize;
            for col in 0..self.width {
                let e = self.entry(c, col);
                if e != UNDEF {
                    let er = self.rep(e);
                    new_table[nc * self.width + col] = remap[er as usize];
                }
            }
        }
        self.table = new_table;
        self.parent = (0..next).collect();
        self.alive = next as usize;
        remap
    }
}

/// Runs the enumeration over the given subgroup generator words.
/// Completion certifies the index; running out of room (after a
/// definition-free lookahead and a compaction attempt) is an explicit
/// error.
pub fn todd_coxeter(
    pres: &FpPresentation,
    subgroup_words: &[Vec<u32>],
    max_cosets: usize,
) -> Result<CosetTable, FpError> {
    let width = 2 * pres.generators.len();
    if width == 0 {
        return Err(FpError::Internal("presentation has no generators".into()));
    }
    let relators = &pres.relators;
    let mut en = Enumerator::new(width, max_cosets);
    for w in subgroup_words {
        en.scan(0, w, true)?;
    }
    let mut alpha: u32 = 0;
    while (alpha as usize) < en.parent.len() {
        if !en.is_alive(alpha) {
            alpha += 1;
            continue;
        }
        let mut relator_index = 0;
        while relator_index < relators.len() {
            match en.scan(alpha, &relators[relator_index], true) {
                Ok(()) => relator_index += 1,
                Err(FpError::BoundExceeded { .. }) => {
                    // salvage: deduce everywhere, drop dead rows, retry once
                    let before = en.alive;
                    en.lookahead(relators);
                    let remap = en.compact();
                    alpha = remap
                        .get(alpha as usize)
                        .copied()
                        .filter(|&v| v != UNDEF)
                        .unwrap_or(0);
                    if en.alive >= en.max_cosets || en.alive == before {
                        return Err(FpError::BoundExceeded { max_cosets });
                    }
                }
                Err(e) => return Err(e),
            }
            if !en.is_alive(alpha) {
                break;
            }
        }
        if en.is_alive(alpha) {
            let mut col = 0;
            while col < width {
                if en.entry(alpha, col) == UNDEF {
                    if en.rows() >= en.max_cosets {
                        let before = en.alive;
                        en.lookahead(relators);
                        let remap = en.compact();
                        alpha = remap
                            .get(alpha as usize)
                            .copied()
                            .filter(|&v| v != UNDEF)
                            .unwrap_or(0);
                        if en.alive >= en.max_cosets || en.alive == before {
                            return Err(FpError::BoundExceeded { max_cosets });
                        }
                        if !en.is_alive(alpha) {
                            break;
                        }
                        col = 0;
                        continue;
                    }
                    let fresh = en.new_coset();
                    en.set_entry(alpha, col, fresh);
                    en.set_entry(fresh, col ^ 1, alpha);
                }
                col += 1;
            }
        }
        alpha += 1;
    }
    en.compact();
    let rows: Vec<Vec<u32>> = (0..en.alive)
        .map(|r| en.table[r * width..(r + 1) * width].to_vec())
        .collect();
    let out = CosetTable {
        ngens: pres.generators.len(),
        rows,
        cosets_defined: en.defined_total,
    };
    out.validate(pres)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_presentation;
    use super::*;

    #[test]
    fn symmetric_group_indices() {
        let pres = parse_presentation("< a, b | a^3, b^2, (a*b)^2 >").unwrap();
        // over <b>: index 3
        let sub = pres.subgroup_words("b").unwrap();
        let t = todd_coxeter(&pres, &sub, 1000).unwrap();
        assert_eq!(t.index(), 3);
        // over the trivial subgroup: index 6
        let t = todd_coxeter(&pres, &[], 1000).unwrap();
        assert_eq!(t.index(), 6);
        let pg = t.perm_rep().unwrap();
        assert_eq!(pg.order(), 6);
        assert!(pg.is_solvable());
    }

    #[test]
    fn alternating_group_order_60() {
        let pres = parse_presentation("< a, b | a^5, b^3, (a*b)^2 >").unwrap();
        let t = todd_coxeter(&pres, &[], 10_000).unwrap();
        assert_eq!(t.index(), 60);
        let pg = t.perm_rep().unwrap();
        assert_eq!(pg.order(), 60);
        assert!(!pg.is_solvable());
    }

    #[test]
    fn quaternion_and_cyclic_indices() {
        // dicyclic presentation of Q8
        let pres = parse_presentation("< a, b | a^4, a^2 = b^2, b^-1 * a * b = a^-1 >").unwrap();
        let t = todd_coxeter(&pres, &[], 1000).unwrap();
        assert_eq!(t.index(), 8);
        // C6 as a product of commuting C2 and C3
        let pres = parse_presentation("< a, b | a^2, b^3, [a, b] >").unwrap();
        let t = todd_coxeter(&pres, &[], 1000).unwrap();
        assert_eq!(t.index(), 6);
    }

    #[test]
    fn bound_exceeded_is_explicit() {
        let pres = parse_presentation("< a, b | a^5, b^3, (a*b)^2 >").unwrap();
        let err = todd_coxeter(&pres, &[], 10).unwrap_err();
        assert!(matches!(err, FpError::BoundExceeded { .. }));
    }

    #[test]
    fn relator_order_does_not_change_the_index() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let base = parse_presentation("< a, b | a^7, b^2, (a*b)^3, [a,b]^2 >").unwrap();
        let reference = todd_coxeter(&base, &[], 100_000).unwrap().index();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let mut shuffled = base.clone();
            shuffled.relators.shuffle(&mut rng);
            let t = todd_coxeter(&shuffled, &[], 100_000).unwrap();
            assert_eq!(t.index(), reference);
        }
    }

    #[test]
    fn infinite_group_hits_the_bound() {
        // Z x Z has no finite coset table over the trivial subgroup
        let pres = parse_presentation("< a, b | [a, b] >").unwrap();
        let err = todd_coxeter(&pres, &[], 5_000).unwrap_err();
        assert!(matches!(err, FpError::BoundExceeded { .. }));
    }
}
