//! The character-theoretic and p-group predicates: Gagola characters,
//! Camina pairs (checked two independent ways, which must agree),
//! character kernels, full ramification, the extraspecial family, and
//! isoclinism.

use crate::group::{
    closure, for_each_isomorphism, is_normal, CayleyGroup, SubgroupHandle,
};

use super::cyclotomic::CyclotomicValue;
use super::{character_table_cached, CharTableError, CharacterTable};

/// Rows that vanish on all but exactly two conjugacy classes, with their
/// degrees.
pub fn gagola_characters(t: &CharacterTable) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for (row, values) in t.values.iter().enumerate() {
        let nonzero = values.iter().filter(|v| !v.is_zero()).count();
        if nonzero == 2 {
            out.push((row, t.degrees[row]));
        }
    }
    out
}

/// Classes entirely inside the subgroup (reps suffice: the subgroup is
/// required to be normal, so it is a union of classes).
fn classes_inside(g: &CayleyGroup, n: &SubgroupHandle) -> Vec<usize> {
    (0..g.conjugacy_classes().len())
        .filter(|&c| n.contains(g.conjugacy_classes()[c][0] as usize))
        .collect()
}

/// Does row `row` contain `n` in its kernel?
fn kernel_contains(g: &CayleyGroup, t: &CharacterTable, row: usize, n: &SubgroupHandle) -> bool {
    let d = t.degrees[row] as i64;
    classes_inside(g, n)
        .into_iter()
        .all(|c| t.values[row][c].as_integer() == Some(d))
}

/// Rows of Irr(G) whose kernel does not contain N. With N trivial this is
/// empty by convention (every kernel contains the identity).
pub fn irr_over(g: &CayleyGroup, t: &CharacterTable, n: &SubgroupHandle) -> Vec<usize> {
    (0..t.values.len())
        .filter(|&row| !kernel_contains(g, t, row, n))
        .collect()
}

/// The kernel of a character row as a subgroup handle.
pub fn kernel_of(
    g: &CayleyGroup,
    t: &CharacterTable,
    row: usize,
) -> Result<SubgroupHandle, CharTableError> {
    if row >= t.values.len() {
        return Err(CharTableError::RowOutOfRange {
            row,
            rows: t.values.len(),
        });
    }
    let d = t.degrees[row] as i64;
    let mut elems = Vec::new();
    for (c, class) in g.conjugacy_classes().iter().enumerate() {
        if t.values[row][c].as_integer() == Some(d) {
            elems.extend(class.iter().map(|&x| x as usize));
        }
    }
    Ok(closure(g, &elems))
}

/// Camina-pair test, run along both routes the definition allows:
/// conjugacy classes (every coset xN with x outside N lies in the class
/// of x) and characters (every row over N vanishes off N). Disagreement
/// is a hard internal error, never a return value.
pub fn is_camina_pair(
    g: &CayleyGroup,
    n: &SubgroupHandle,
) -> Result<bool, CharTableError> {
    n.validate(g)?;
    if !is_normal(g, n) {
        return Err(CharTableError::NotNormal);
    }

    // class route
    let mut class_route = true;
    'outer: for x in 0..g.order() {
        if n.contains(x) {
            continue;
        }
        let cx = g.class_of(x);
        for &m in n.elements() {
            if g.class_of(g.mul(x, m as usize)) != cx {
                class_route = false;
                break 'outer;
            }
        }
    }

    // character route
    let t = character_table_cached(g)?;
    let over = irr_over(g, &t, n);
    let outside: Vec<usize> = (0..g.conjugacy_classes().len())
        .filter(|&c| !n.contains(g.conjugacy_classes()[c][0] as usize))
        .collect();
    let char_route = over
        .iter()
        .all(|&row| outside.iter().all(|&c| t.values[row][c].is_zero()));

    if class_route != char_route {
        return Err(CharTableError::CaminaDisagreement {
            class_route,
            char_route,
        });
    }
    Ok(class_route)
}

/// Outcome of the full-ramification test; carries the reason when false.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RamificationOutcome {
    FullyRamified { e: u64 },
    NotInvariant,
    NoConstituent,
    MultipleConstituents { count: usize },
    WrongMultiplicity { e: u64 },
}

impl RamificationOutcome {
    pub fn is_fully_ramified(&self) -> bool {
        matches!(self, RamificationOutcome::FullyRamified { .. })
    }
}

/// Is the linear character `lambda_row` of the abelian normal subgroup N
/// fully ramified with respect to G/N? True exactly when a single
/// irreducible of G restricts onto it, with multiplicity e, e^2 = |G:N|.
pub fn is_fully_ramified(
    g: &CayleyGroup,
    n: &SubgroupHandle,
    lambda_row: usize,
) -> Result<RamificationOutcome, CharTableError> {
    n.validate(g)?;
    if !is_normal(g, n) {
        return Err(CharTableError::NotNormal);
    }
    let (ng, elems) = g.subgroup_as_group(n)?;
    if !ng.is_abelian() {
        return Err(CharTableError::NotAbelian);
    }
    let tn = character_table_cached(&ng)?;
    if lambda_row >= tn.values.len() {
        return Err(CharTableError::RowOutOfRange {
            row: lambda_row,
            rows: tn.values.len(),
        });
    }
    let sub_index = |parent: usize| -> usize {
        elems.binary_search(&parent).expect("element of N")
    };
    // abelian classes are singletons in element order
    let lambda = |parent: usize| -> &CyclotomicValue {
        &tn.values[lambda_row][sub_index(parent)]
    };

    // invariance under conjugation by parent generators
    for &t in g.generating_set() {
        for &m in n.elements() {
            let c = g.conjugate(m as usize, t as usize);
            if !lambda(m as usize).equals(lambda(c)) {
                return Ok(RamificationOutcome::NotInvariant);
            }
        }
    }

    let tg = character_table_cached(g)?;
    let m_big = tg.exponent;
    debug_assert_eq!(m_big % tn.exponent, 0);
    let mut constituents: Vec<(usize, u64)> = Vec::new();
    for row in 0..tg.values.len() {
        // <chi|_N, lambda> = (1/|N|) sum over n of chi(n) conj(lambda(n))
        let mut s = CyclotomicValue::zero(m_big);
        for &m in n.elements() {
            let chi = &tg.values[row][g.class_of(m as usize)];
            let lam = lambda(m as usize).conjugate().embed(m_big);
            s = s.add(&chi.mul(&lam));
        }
        let v = s.as_integer().ok_or_else(|| {
            CharTableError::Internal("restriction multiplicity is not an integer".into())
        })?;
        if v % n.order() as i64 != 0 {
            return Err(CharTableError::Internal(
                "restriction multiplicity is not integral".into(),
            ));
        }
        let mult = v / n.order() as i64;
        if mult < 0 {
            return Err(CharTableError::Internal(
                "negative restriction multiplicity".into(),
            ));
        }
        if mult > 0 {
            constituents.push((row, mult as u64));
        }
    }
    match constituents.len() {
        0 => Ok(RamificationOutcome::NoConstituent),
        1 => {
            let (row, e) = constituents[0];
            let index = (g.order() / n.order()) as u64;
            if e * e == index && tg.degrees[row] == e {
                Ok(RamificationOutcome::FullyRamified { e })
            } else {
                Ok(RamificationOutcome::WrongMultiplicity { e })
            }
        }
        c => Ok(RamificationOutcome::MultipleConstituents { count: c }),
    }
}

fn p_of(g: &CayleyGroup) -> Result<u64, CharTableError> {
    crate::arith::is_prime_power(g.order() as u64)
        .map(|(p, _)| p)
        .ok_or(CharTableError::NotPGroup { order: g.order() })
}

/// Z(G) = G' = Φ(G) of order p.
pub fn is_extraspecial(g: &CayleyGroup) -> Result<bool, CharTableError> {
    let p = p_of(g)?;
    let z = g.center();
    if z.order() as u64 != p {
        return Ok(false);
    }
    let d = g.derived_subgroup();
    if d.elements() != z.elements() {
        return Ok(false);
    }
    let f = g.frattini_of_p_group(p)?;
    Ok(f.elements() == z.elements())
}

/// All subgroups of the (abelian) subgroup `z` of `g`, found by closing
/// under single-generator extensions.
fn subgroups_of_abelian(g: &CayleyGroup, z: &SubgroupHandle) -> Vec<SubgroupHandle> {
    let mut all: Vec<SubgroupHandle> = vec![crate::group::trivial_subgroup(g)];
    loop {
        let mut grew = false;
        let snapshot = all.clone();
        for s in &snapshot {
            for &x in z.elements() {
                if s.contains(x as usize) {
                    continue;
                }
                let mut seeds: Vec<usize> = s.gens().iter().map(|&v| v as usize).collect();
                seeds.push(x as usize);
                let bigger = closure(g, &seeds);
                if !all.iter().any(|t| t.elements() == bigger.elements()) {
                    all.push(bigger);
                    grew = true;
                }
            }
        }
        if !grew {
            return all;
        }
    }
}

/// Every index-p subgroup of the center yields an extraspecial quotient.
pub fn is_semi_extraspecial(g: &CayleyGroup) -> Result<bool, CharTableError> {
    let p = p_of(g)?;
    let z = g.center();
    if z.order() == 1 || z.order() as u64 % p != 0 {
        return Ok(false);
    }
    let target = z.order() / p as usize;
    let maximals: Vec<SubgroupHandle> = subgroups_of_abelian(g, &z)
        .into_iter()
        .filter(|s| s.order() == target)
        .collect();
    if maximals.is_empty() {
        return Ok(false);
    }
    for m in maximals {
        let q = g.quotient(&m)?;
        if !is_extraspecial(&q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Semi-extraspecial with `|G : G'| = |G'|^2`.
pub fn is_ultraspecial(g: &CayleyGroup) -> Result<bool, CharTableError> {
    if !is_semi_extraspecial(g)? {
        return Ok(false);
    }
    let d = g.derived_subgroup().order();
    Ok(g.order() / d == d * d)
}

const ISOCLINISM_CAP: usize = 256;

/// Isoclinism: isomorphisms G/Z -> H/Z and G' -> H' compatible with the
/// commutator square. Searched by enumerating central-quotient
/// isomorphisms and deriving the derived-subgroup map from commutators.
pub fn is_isoclinic(g: &CayleyGroup, h: &CayleyGroup) -> Result<bool, CharTableError> {
    let (qg, gproj) = g.quotient_with_map(&g.center())?;
    let (qh, hproj) = h.quotient_with_map(&h.center())?;
    let dg = g.derived_subgroup();
    let dh = h.derived_subgroup();
    if qg.order() > ISOCLINISM_CAP || dg.order() > ISOCLINISM_CAP {
        return Err(CharTableError::IsoclinismTooLarge {
            quotient: qg.order(),
            derived: dg.order(),
            cap: ISOCLINISM_CAP,
        });
    }
    if qg.order() != qh.order() || dg.order() != dh.order() {
        return Ok(false);
    }
    let (dg_group, dg_elems) = g.subgroup_as_group(&dg)?;
    let (dh_group, dh_elems) = h.subgroup_as_group(&dh)?;

    // coset representatives: least parent element per coset
    let reps_of = |proj: &[u32], count: usize| -> Vec<usize> {
        let mut reps = vec![usize::MAX; count];
        for (x, &c) in proj.iter().enumerate() {
            if reps[c as usize] == usize::MAX {
                reps[c as usize] = x;
            }
        }
        reps
    };
    let greps = reps_of(&gproj, qg.order());
    let hreps = reps_of(&hproj, qh.order());

    let dg_index = |x: usize| dg_elems.binary_search(&x).expect("commutator in G'");
    let dh_index = |x: usize| dh_elems.binary_search(&x).expect("commutator in H'");

    let found = for_each_isomorphism(&qg, &qh, |alpha| {
        // derive beta on commutators; the commutator only depends on the
        // cosets because central factors cancel
        let mut beta = vec![usize::MAX; dg_group.order()];
        for i in 0..qg.order() {
            for j in 0..qg.order() {
                let cg = dg_index(g.commutator(greps[i], greps[j]));
                let ch = dh_index(h.commutator(
                    hreps[alpha[i] as usize],
                    hreps[alpha[j] as usize],
                ));
                if beta[cg] == usize::MAX {
                    beta[cg] = ch;
                } else if beta[cg] != ch {
                    return false;
                }
            }
        }
        // the assignment must extend to an isomorphism G' -> H'
        let gens: Vec<usize> = (0..dg_group.order()).filter(|&x| beta[x] != usize::MAX).collect();
        let images: Vec<usize> = gens.iter().map(|&x| beta[x]).collect();
        match crate::group::extend_generator_map(&dg_group, &gens, &dh_group, &images, true) {
            Some(ext) => ext.domain_elements.len() == dg_group.order(),
            None => false,
        }
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        cyclic, dihedral, elementary_abelian, extraspecial_p3, heisenberg, quaternion8,
    };

    #[test]
    fn d8_has_one_gagola_character() {
        let d8 = dihedral(8);
        let t = character_table_cached(&d8).unwrap();
        let gag = gagola_characters(&t);
        assert_eq!(gag.len(), 1);
        assert_eq!(gag[0].1, 2);
        // its two nonvanishing classes are the identity and the center
        let row = gag[0].0;
        let z = d8.center();
        for (c, class) in d8.conjugacy_classes().iter().enumerate() {
            let inside = z.contains(class[0] as usize);
            assert_eq!(!t.values[row][c].is_zero(), inside);
        }
    }

    #[test]
    fn c4_has_no_gagola_character() {
        let t = character_table_cached(&cyclic(4)).unwrap();
        assert!(gagola_characters(&t).is_empty());
    }

    #[test]
    fn camina_pairs_small() {
        let d8 = dihedral(8);
        assert!(is_camina_pair(&d8, &d8.center()).unwrap());

        let q8 = quaternion8();
        assert!(is_camina_pair(&q8, &q8.center()).unwrap());

        let es = extraspecial_p3(3, 3).unwrap();
        assert!(is_camina_pair(&es, &es.center()).unwrap());
        let es9 = extraspecial_p3(3, 9).unwrap();
        assert!(is_camina_pair(&es9, &es9.center()).unwrap());

        // abelian: classes are singletons, so no Camina pair
        let c4 = cyclic(4);
        let c2 = closure(&c4, &[2]);
        assert!(!is_camina_pair(&c4, &c2).unwrap());
    }

    #[test]
    fn irr_over_conventions() {
        let d8 = dihedral(8);
        let t = character_table_cached(&d8).unwrap();
        // N = 1: empty by convention
        let triv = crate::group::trivial_subgroup(&d8);
        assert!(irr_over(&d8, &t, &triv).is_empty());
        // principal character has kernel G
        let principal = (0..t.values.len())
            .find(|&r| {
                t.degrees[r] == 1
                    && t.values[r].iter().all(|v| v.as_integer() == Some(1))
            })
            .unwrap();
        assert_eq!(kernel_of(&d8, &t, principal).unwrap().order(), 8);
        // over the center: exactly the faithful degree-2 character
        let over = irr_over(&d8, &t, &d8.center());
        assert_eq!(over.len(), 1);
        assert_eq!(t.degrees[over[0]], 2);
    }

    #[test]
    fn full_ramification() {
        // extraspecial 27, center, any nonprincipal linear character
        let es = extraspecial_p3(3, 3).unwrap();
        let z = es.center();
        let (zg, _) = es.subgroup_as_group(&z).unwrap();
        let tz = character_table_cached(&zg).unwrap();
        let nonprincipal = (0..3)
            .find(|&r| !tz.values[r].iter().all(|v| v.as_integer() == Some(1)))
            .unwrap();
        let out = is_fully_ramified(&es, &z, nonprincipal).unwrap();
        assert_eq!(out, RamificationOutcome::FullyRamified { e: 3 });

        // Klein four over a central C2: two extensions, not fully ramified
        let v4 = elementary_abelian(2, 2);
        let c2 = closure(&v4, &[1]);
        let (c2g, _) = v4.subgroup_as_group(&c2).unwrap();
        let tc2 = character_table_cached(&c2g).unwrap();
        let nonprincipal = (0..2)
            .find(|&r| !tc2.values[r].iter().all(|v| v.as_integer() == Some(1)))
            .unwrap();
        let out = is_fully_ramified(&v4, &c2, nonprincipal).unwrap();
        assert!(!out.is_fully_ramified());

        // Heisenberg over F4: e^2 = 16
        let h4 = heisenberg(4).unwrap();
        let z = h4.center();
        let (zg, _) = h4.subgroup_as_group(&z).unwrap();
        let tz = character_table_cached(&zg).unwrap();
        let nonprincipal = (0..4)
            .find(|&r| !tz.values[r].iter().all(|v| v.as_integer() == Some(1)))
            .unwrap();
        let out = is_fully_ramified(&h4, &z, nonprincipal).unwrap();
        assert_eq!(out, RamificationOutcome::FullyRamified { e: 4 });
    }

    #[test]
    fn extraspecial_family() {
        assert!(is_extraspecial(&dihedral(8)).unwrap());
        assert!(is_extraspecial(&quaternion8()).unwrap());
        assert!(!is_extraspecial(&cyclic(8)).unwrap());
        assert!(!is_semi_extraspecial(&cyclic(8)).unwrap());
        assert!(!is_ultraspecial(&cyclic(8)).unwrap());

        let h4 = heisenberg(4).unwrap();
        assert!(is_semi_extraspecial(&h4).unwrap());
        assert!(is_ultraspecial(&h4).unwrap());
        // extraspecial of order 27 is semi-extraspecial but not ultraspecial
        // (|G:G'| = 9 != |G'|^2 = 9 does hold, so it is ultraspecial too)
        let es = extraspecial_p3(3, 3).unwrap();
        assert!(is_semi_extraspecial(&es).unwrap());
    }

    #[test]
    fn isoclinism() {
        let a = extraspecial_p3(3, 3).unwrap();
        let b = extraspecial_p3(3, 9).unwrap();
        assert!(is_isoclinic(&a, &b).unwrap());
        assert!(is_isoclinic(&a, &a).unwrap());
        // derived subgroups differ in order
        let d8 = dihedral(8);
        let e8 = elementary_abelian(2, 3);
        assert!(!is_isoclinic(&d8, &e8).unwrap());
    }
}
