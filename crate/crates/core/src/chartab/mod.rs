//! Exact character tables and the character-theoretic predicates built
//! on them: Gagola characters, Camina pairs, full ramification, the
//! (semi-/ultra-)extraspecial family, and isoclinism.

mod cyclotomic;
mod dixon;
mod predicates;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicValue};
pub use dixon::character_table;
pub use predicates::{
    gagola_characters, irr_over, is_camina_pair, is_extraspecial, is_fully_ramified,
    is_isoclinic, is_semi_extraspecial, is_ultraspecial, kernel_of, RamificationOutcome,
};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::Serialize;
use thiserror::Error;

use crate::group::CayleyGroup;

#[derive(Debug, Error)]
pub enum CharTableError {
    #[error("internal character-table failure: {0}")]
    Internal(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("expected an abelian normal subgroup")]
    NotAbelian,
    #[error("row index {row} out of range ({rows} rows)")]
    RowOutOfRange { row: usize, rows: usize },
    #[error("class-based and character-based Camina tests disagree (class: {class_route}, character: {char_route})")]
    CaminaDisagreement { class_route: bool, char_route: bool },
    #[error("group of order {order} is not a p-group")]
    NotPGroup { order: usize },
    #[error("isoclinism search limit exceeded: |G/Z| = {quotient}, |G'| = {derived} (cap {cap})")]
    IsoclinismTooLarge { quotient: usize, derived: usize, cap: usize },
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub rep: u32,
    pub size: u32,
    pub elem_order: u32,
}

/// Exact irreducible character table. Column order matches the parent
/// group's conjugacy-class order, so `group.class_of(x)` indexes columns.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group_order: usize,
    pub group_hash: String,
    pub exponent: usize,
    /// the modular prime the table was computed with, for reproducibility
    pub dixon_prime: u64,
    pub classes: Vec<ClassInfo>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<CyclotomicValue>>,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn value(&self, row: usize, class: usize) -> &CyclotomicValue {
        &self.values[row][class]
    }

    /// Class-weighted inner product of two rows; characters make this a
    /// rational integer and the division exact.
    pub fn inner_product(&self, a: usize, b: usize) -> Option<i64> {
        let m = self.exponent;
        let mut s = CyclotomicValue::zero(m);
        for (j, c) in self.classes.iter().enumerate() {
            let term = self.values[a][j]
                .mul(&self.values[b][j].conjugate())
                .scale(c.size as i64);
            s = s.add(&term);
        }
        let v = s.as_integer()?;
        if v % self.group_order as i64 != 0 {
            return None;
        }
        Some(v / self.group_order as i64)
    }

    /// Exact row and column orthogonality over the cyclotomic integers.
    pub fn verify_exact_orthogonality(&self) -> bool {
        let k = self.class_count();
        for a in 0..k {
            for b in a..k {
                let expect = if a == b { 1 } else { 0 };
                if self.inner_product(a, b) != Some(expect) {
                    return false;
                }
            }
        }
        // columns: sum over rows of chi(g_a) conj(chi(g_b)) = delta |C_G(g_a)|
        let m = self.exponent;
        for a in 0..k {
            for b in a..k {
                let mut s = CyclotomicValue::zero(m);
                for row in &self.values {
                    s = s.add(&row[a].mul(&row[b].conjugate()));
                }
                let expect = if a == b {
                    (self.group_order / self.classes[a].size as usize) as i64
                } else {
                    0
                };
                if s.as_integer() != Some(expect) {
                    return false;
                }
            }
        }
        true
    }

    pub fn degree_multiset(&self) -> DegreeMultiset {
        DegreeMultiset::from_degrees(&self.degrees)
    }
}

/// Character degrees with multiplicities, sorted ascending by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeMultiset(pub Vec<(u64, usize)>);

impl DegreeMultiset {
    pub fn from_degrees(degrees: &[u64]) -> Self {
        let mut counts: std::collections::BTreeMap<u64, usize> = std::collections::BTreeMap::new();
        for &d in degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        DegreeMultiset(counts.into_iter().collect())
    }

    pub fn from_pairs(pairs: &[(u64, usize)]) -> Self {
        let mut v = pairs.to_vec();
        v.sort_unstable();
        DegreeMultiset(v)
    }

    /// `Σ multiplicity · degree²`, which must equal the group order.
    pub fn order_sum(&self) -> u64 {
        self.0.iter().map(|&(d, m)| d * d * m as u64).sum()
    }

    pub fn contains_degree(&self, d: u64) -> bool {
        self.0.iter().any(|&(deg, _)| deg == d)
    }

    /// Angle-bracket rendering, e.g. `[<1,12>,<3,4>,<12,1>]`.
    pub fn to_bracket_string(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(d, m)| format!("<{d},{m}>"))
            .collect();
        format!("[{}]", parts.join(","))
    }
}

impl std::fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_bracket_string())
    }
}

static TABLE_CACHE: Lazy<Mutex<HashMap<String, Arc<CharacterTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Cached table lookup keyed by the content hash of the Cayley table.
/// The cache is merge-only and shared across threads.
pub fn character_table_cached(g: &CayleyGroup) -> Result<Arc<CharacterTable>, CharTableError> {
    let key = g.content_hash_hex();
    if let Some(t) = TABLE_CACHE.lock().unwrap().get(&key) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(character_table(g)?);
    TABLE_CACHE
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

pub fn degree_multiset(g: &CayleyGroup) -> Result<DegreeMultiset, CharTableError> {
    Ok(character_table_cached(g)?.degree_multiset())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        cyclic, dihedral, direct_product, extraspecial_p3, heisenberg, quaternion8,
    };
    use crate::group::extend_generator_map;

    #[test]
    fn cyclic3_table() {
        let t = character_table(&cyclic(3)).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1]);
        // all values are powers of a primitive cube root
        for row in &t.values {
            for v in row {
                let is_root_power = (0..3).any(|k| v.equals(&CyclotomicValue::root_power(3, k)));
                assert!(is_root_power);
            }
        }
        assert!(t.verify_exact_orthogonality());
    }

    #[test]
    fn q8_degrees() {
        // oracle: 5 classes, degrees are divisors with sum of squares 8;
        // enumeration forces (1,1,1,1,2)
        let t = character_table(&quaternion8()).unwrap();
        assert_eq!(
            t.degree_multiset(),
            DegreeMultiset::from_pairs(&[(1, 4), (2, 1)])
        );
        assert!(t.verify_exact_orthogonality());
    }

    #[test]
    fn s3_and_d8() {
        let t = character_table(&dihedral(6)).unwrap();
        assert_eq!(
            t.degree_multiset(),
            DegreeMultiset::from_pairs(&[(1, 2), (2, 1)])
        );
        let t = character_table(&dihedral(8)).unwrap();
        assert_eq!(
            t.degree_multiset(),
            DegreeMultiset::from_pairs(&[(1, 4), (2, 1)])
        );
        assert!(t.verify_exact_orthogonality());
    }

    #[test]
    fn extraspecial_tables() {
        for e in [3u64, 9] {
            let g = extraspecial_p3(3, e).unwrap();
            let t = character_table(&g).unwrap();
            assert_eq!(
                t.degree_multiset(),
                DegreeMultiset::from_pairs(&[(1, 9), (3, 2)]),
                "exponent {e}"
            );
            assert!(t.verify_exact_orthogonality());
        }
        let g = extraspecial_p3(5, 5).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(
            t.degree_multiset(),
            DegreeMultiset::from_pairs(&[(1, 25), (5, 4)])
        );
    }

    #[test]
    fn heisenberg4_multiset() {
        let t = character_table(&heisenberg(4).unwrap()).unwrap();
        assert_eq!(
            t.degree_multiset(),
            DegreeMultiset::from_pairs(&[(1, 16), (4, 3)])
        );
        assert_eq!(t.degree_multiset().to_bracket_string(), "[<1,16>,<4,3>]");
        assert!(t.verify_exact_orthogonality());
    }

    #[test]
    fn abelian_tables_match_homomorphism_enumeration() {
        // independent oracle: the table of an abelian group is the set of
        // all homomorphisms into the cyclic group of the exponent
        for g in [
            cyclic(6),
            direct_product(&cyclic(2), &cyclic(4)),
            direct_product(&cyclic(3), &cyclic(3)),
        ] {
            let m = g.exponent();
            let cm = cyclic(m);
            let gens: Vec<usize> = g.generating_set().iter().map(|&x| x as usize).collect();
            let mut homs: Vec<Vec<usize>> = Vec::new();
            let mut images = vec![0usize; gens.len()];
            enumerate_homs(&g, &cm, &gens, &mut images, 0, &mut homs);
            assert_eq!(homs.len(), g.order());

            let t = character_table(&g).unwrap();
            assert!(t.degrees.iter().all(|&d| d == 1));
            // each hom row must appear among the table rows
            let table_rows: std::collections::BTreeSet<Vec<Vec<i64>>> = t
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.canonical()).collect())
                .collect();
            for hom in &homs {
                let row: Vec<Vec<i64>> = t
                    .classes
                    .iter()
                    .map(|c| {
                        CyclotomicValue::root_power(m, hom[c.rep as usize] as i64).canonical()
                    })
                    .collect();
                assert!(table_rows.contains(&row));
            }
        }

        fn enumerate_homs(
            g: &CayleyGroup,
            cm: &CayleyGroup,
            gens: &[usize],
            images: &mut Vec<usize>,
            depth: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if depth == gens.len() {
                if let Some(ext) = extend_generator_map(g, gens, cm, images, false) {
                    if ext.domain_elements.len() == g.order() {
                        out.push(ext.map.iter().map(|&v| v as usize).collect());
                    }
                }
                return;
            }
            for c in 0..cm.order() {
                images[depth] = c;
                enumerate_homs(g, cm, gens, images, depth + 1, out);
            }
        }
    }
}
