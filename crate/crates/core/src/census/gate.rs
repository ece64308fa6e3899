//! The entrance gate: five individually reported conditions that
//! together certify a group as an Isaacs group of its degree.

use crate::arith::{isaacs_degree, IsaacsParameters};
use crate::chartab::{character_table_cached, gagola_characters, is_camina_pair};
use crate::group::{CayleyGroup, SubgroupHandle};

use super::{CensusError, CheckStatus};

/// The gate verdict with each condition reported on its own.
#[derive(Debug, Clone)]
pub struct GateOutcome {
    pub params: Option<IsaacsParameters>,
    /// (condition name, status) in evaluation order
    pub conditions: Vec<(&'static str, CheckStatus)>,
    pub gagola_rows: Vec<usize>,
    pub gagola_degree: Option<u64>,
    pub minimal_normal: Option<SubgroupHandle>,
}

impl GateOutcome {
    pub fn passed(&self) -> bool {
        self.conditions
            .iter()
            .all(|&(_, s)| s == CheckStatus::Pass)
    }

    pub fn condition(&self, name: &str) -> Option<CheckStatus> {
        self.conditions
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, s)| s)
    }
}

/// Runs the five gate conditions: the order has the form `e^4 - e^3`
/// with `e` a prime power; `d = e^2 - e` is a character degree; a Gagola
/// character of degree d exists; there is a unique minimal normal
/// subgroup, of order e; and the pair with it is a Camina pair.
pub fn isaacs_gate(g: &CayleyGroup) -> Result<GateOutcome, CensusError> {
    let mut conditions = Vec::with_capacity(5);
    let params = isaacs_degree(g.order() as u64);
    conditions.push((
        "order_is_e4_minus_e3",
        if params.is_some() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    ));
    let Some(params) = params else {
        conditions.push(("degree_d_occurs", CheckStatus::Skipped));
        conditions.push(("gagola_character_of_degree_d", CheckStatus::Skipped));
        conditions.push(("unique_minimal_normal_of_order_e", CheckStatus::Skipped));
        conditions.push(("camina_pair_with_minimal_normal", CheckStatus::Skipped));
        return Ok(GateOutcome {
            params: None,
            conditions,
            gagola_rows: Vec::new(),
            gagola_degree: None,
            minimal_normal: None,
        });
    };

    let table = character_table_cached(g)?;
    let d = params.d;
    conditions.push((
        "degree_d_occurs",
        if table.degrees.iter().any(|&x| x == d) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    ));

    let gagola: Vec<(usize, u64)> = gagola_characters(&table);
    let gagola_of_degree_d: Vec<usize> = gagola
        .iter()
        .filter(|&&(_, deg)| deg == d)
        .map(|&(row, _)| row)
        .collect();
    conditions.push((
        "gagola_character_of_degree_d",
        if gagola_of_degree_d.is_empty() {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        },
    ));

    let minimal = g.minimal_normal_subgroups();
    let unique_ok = minimal.len() == 1 && minimal[0].order() as u64 == params.e;
    conditions.push((
        "unique_minimal_normal_of_order_e",
        if unique_ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    ));

    let minimal_normal = if minimal.len() == 1 {
        Some(minimal.into_iter().next().unwrap())
    } else {
        None
    };

    let camina = match &minimal_normal {
        Some(n) => {
            let ok = is_camina_pair(g, n)?;
            if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            }
        }
        None => CheckStatus::Skipped,
    };
    conditions.push(("camina_pair_with_minimal_normal", camina));

    Ok(GateOutcome {
        params: Some(params),
        conditions,
        gagola_degree: if gagola_of_degree_d.is_empty() {
            None
        } else {
            Some(d)
        },
        gagola_rows: gagola_of_degree_d,
        minimal_normal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, dihedral, quaternion8};

    #[test]
    fn d8_and_q8_pass_with_degree_2() {
        for g in [dihedral(8), quaternion8()] {
            let out = isaacs_gate(&g).unwrap();
            assert!(out.passed(), "{:?}", out.conditions);
            let p = out.params.unwrap();
            assert_eq!((p.e, p.d), (2, 2));
            assert_eq!(out.gagola_degree, Some(2));
            assert_eq!(out.minimal_normal.as_ref().unwrap().order(), 2);
        }
    }

    #[test]
    fn wrong_order_fails_at_the_order_test() {
        // |S3 x C4| = 24 is not of the form e^4 - e^3
        let g = crate::construct::direct_product(&dihedral(6), &cyclic(4));
        let out = isaacs_gate(&g).unwrap();
        assert!(!out.passed());
        assert_eq!(
            out.condition("order_is_e4_minus_e3"),
            Some(CheckStatus::Fail)
        );
    }

    #[test]
    fn abelian_order_8_fails_at_the_degree_test() {
        let g = cyclic(8);
        let out = isaacs_gate(&g).unwrap();
        assert!(!out.passed());
        assert_eq!(out.condition("order_is_e4_minus_e3"), Some(CheckStatus::Pass));
        assert_eq!(out.condition("degree_d_occurs"), Some(CheckStatus::Fail));
    }
}
