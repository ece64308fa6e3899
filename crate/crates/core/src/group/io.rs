//! Group files: JSON with either a full multiplication table or a
//! permutation generator list. The loader revalidates every invariant and
//! reports malformed input with a position.

use serde::{Deserialize, Serialize};

use super::cayley::CayleyGroup;
use super::perm::{Perm, PermutationGroup};
use super::GroupError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupFile {
    Cayley {
        order: usize,
        mul: Vec<Vec<usize>>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<u32>>,
    },
}

/// Either backend, as loaded from disk.
#[derive(Debug, Clone)]
pub enum AnyGroup {
    Cayley(CayleyGroup),
    Perm(PermutationGroup),
}

pub fn parse_group_json(text: &str) -> Result<AnyGroup, GroupError> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| GroupError::InvalidTable(format!(
        "JSON error at line {}, column {}: {}",
        e.line(),
        e.column(),
        e
    )))?;
    match file {
        GroupFile::Cayley { order, mul } => {
            if mul.len() != order {
                return Err(GroupError::InvalidTable(format!(
                    "declared order {} but table has {} rows",
                    order,
                    mul.len()
                )));
            }
            Ok(AnyGroup::Cayley(CayleyGroup::from_mul_table(mul)?))
        }
        GroupFile::Perm { degree, generators } => {
            let mut gens = Vec::with_capacity(generators.len());
            for (i, imgs) in generators.into_iter().enumerate() {
                if imgs.len() != degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "generator {} has length {}, expected degree {}",
                        i,
                        imgs.len(),
                        degree
                    )));
                }
                gens.push(Perm::from_images(imgs).map_err(|e| {
                    GroupError::InvalidPermutation(format!("generator {i}: {e}"))
                })?);
            }
            Ok(AnyGroup::Perm(PermutationGroup::new(degree, gens)?))
        }
    }
}

pub fn cayley_to_json(g: &CayleyGroup) -> String {
    let mul: Vec<Vec<usize>> = (0..g.order())
        .map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect())
        .collect();
    serde_json::to_string(&GroupFile::Cayley { order: g.order(), mul }).expect("serialization")
}

pub fn perm_to_json(g: &PermutationGroup) -> String {
    serde_json::to_string(&GroupFile::Perm {
        degree: g.degree(),
        generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
    })
    .expect("serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::dihedral;

    #[test]
    fn cayley_round_trip() {
        let d8 = dihedral(8);
        let text = cayley_to_json(&d8);
        match parse_group_json(&text).unwrap() {
            AnyGroup::Cayley(g) => {
                assert_eq!(g.order(), 8);
                assert_eq!(g.content_hash(), d8.content_hash());
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn perm_round_trip() {
        let g = PermutationGroup::new(
            3,
            vec![Perm::from_images(vec![1, 2, 0]).unwrap()],
        )
        .unwrap();
        let text = perm_to_json(&g);
        match parse_group_json(&text).unwrap() {
            AnyGroup::Perm(h) => assert_eq!(h.order(), 3),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn malformed_rejected_with_diagnostics() {
        let bad = r#"{"kind":"cayley","order":2,"mul":[[0,1],[1,2]]}"#;
        let err = parse_group_json(bad).unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");

        let bad = r#"{"kind":"cayley","order":2,"mul":[[0,1],[1,0]"#;
        let err = parse_group_json(bad).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }
}
