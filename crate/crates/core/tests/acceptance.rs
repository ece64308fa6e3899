//! The acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Counts, multisets, and structural checks are asserted
//! exactly; elapsed times are printed for the record.
//!
//! The degree-9 semilinear census is long-running and non-blocking; it
//! is `#[ignore]`d by default and runs with `cargo test --release -p
//! isaacs-core --test acceptance -- --ignored`.

use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use isaacs_core::arith::{generalized_zsigmondy, isaacs_degree};
use isaacs_core::census::{
    classify_e_prime, classify_p_closed, classify_semilinear_stretch, isaacs_gate, CensusOutcome,
    CheckStatus, Recipe,
};
use isaacs_core::chartab::{
    character_table_cached, is_camina_pair, irr_over, DegreeMultiset,
};
use isaacs_core::construct::{
    cyclic, dihedral, direct_product, extraspecial_p3, field_frobenius_group, heisenberg,
    quaternion8, sl25_complement,
};
use isaacs_core::fp::{
    certify_nonsolvable_camina, parse_presentation, CertifyOptions, NONSOLVABLE_CAMINA_25,
};
use isaacs_core::group::CayleyGroup;

/// Several criteria consult the same census; compute each once.
fn prime_census(p: u64) -> Arc<CensusOutcome> {
    static CACHE: OnceLock<Mutex<std::collections::HashMap<u64, Arc<CensusOutcome>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&p) {
        return Arc::clone(hit);
    }
    let out = Arc::new(classify_e_prime(p).unwrap());
    cache
        .lock()
        .unwrap()
        .entry(p)
        .or_insert_with(|| Arc::clone(&out));
    out
}

fn report(criterion: &str, pass: bool, elapsed: std::time::Duration, detail: &str) {
    println!(
        "criterion {criterion}: {} in {elapsed:.1?} -- {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn census_common_assertions(out: &CensusOutcome, expected_order: usize, expected_d: u64) {
    assert!(out.assert_pairwise_non_isomorphic());
    for g in &out.groups {
        assert_eq!(g.group.order(), expected_order);
        assert!(g.gate.passed());
        assert_eq!(g.gate.gagola_degree, Some(expected_d));
        assert!(
            g.structure.all_applicable_pass(),
            "structure checks failed for {}: {:#?}",
            g.recipe.describe(),
            g.structure.checks
        );
    }
}

#[test]
fn criterion_1_degree_2_census() {
    let t = Instant::now();
    let out = prime_census(2);
    census_common_assertions(&out, 8, 2);
    let pass = out.groups.len() == 2;
    report("1 (e = 2 census)", pass, t.elapsed(), "exactly 2 groups of order 8, d = 2");
}

#[test]
fn criterion_2_degree_3_census() {
    let t = Instant::now();
    let out = prime_census(3);
    census_common_assertions(&out, 54, 6);
    let mut exps: Vec<usize> = out.groups.iter().map(|g| g.sylow_exponent).collect();
    exps.sort_unstable();
    let pass = out.groups.len() == 2 && exps == vec![3, 9];
    report(
        "2 (e = 3 census)",
        pass,
        t.elapsed(),
        "exactly 2 groups of order 54, Sylow exponents {3, 9}, d = 6",
    );
}

#[test]
fn criterion_3_degree_5_census() {
    let t = Instant::now();
    let out = prime_census(5);
    census_common_assertions(&out, 500, 20);
    let exp25 = out.groups.iter().filter(|g| g.sylow_exponent == 25).count();
    let exp5 = out.groups.iter().filter(|g| g.sylow_exponent == 5).count();
    let pass = out.groups.len() == 3 && exp25 == 1 && exp5 == 2;
    report(
        "3 (e = 5 census)",
        pass,
        t.elapsed(),
        "exactly 3 groups of order 500 (1 exponent-25 + 2 exponent-5), d = 20",
    );
}

#[test]
fn criterion_4_degree_7_census() {
    let t = Instant::now();
    let out = prime_census(7);
    census_common_assertions(&out, 2058, 42);
    let exp49 = out.groups.iter().filter(|g| g.sylow_exponent == 49).count();
    let exp7 = out.groups.iter().filter(|g| g.sylow_exponent == 7).count();
    let pass = out.groups.len() == 4 && exp49 == 1 && exp7 == 3;
    report(
        "4 (e = 7 census)",
        pass,
        t.elapsed(),
        "exactly 4 groups of order 2058 (1 + 3), pairwise non-isomorphic",
    );
}

#[test]
fn criterion_5_degree_4_partial_census() {
    let t = Instant::now();
    let candidates = vec![(
        Recipe::Family {
            family: "heisenberg".into(),
            params: vec![4],
        },
        heisenberg(4).unwrap(),
    )];
    let out = classify_p_closed(4, candidates).unwrap();
    census_common_assertions(&out, 192, 12);
    let published = [
        DegreeMultiset::from_pairs(&[(1, 12), (3, 4), (12, 1)]),
        DegreeMultiset::from_pairs(&[(1, 3), (3, 5), (12, 1)]),
    ];
    let all_published = out
        .groups
        .iter()
        .all(|g| published.contains(&g.degree_multiset));
    let pass = out.groups.len() >= 2 && all_published;
    assert!(out.completeness.contains("database"));
    report(
        "5 (e = 4 partial census)",
        pass,
        t.elapsed(),
        "at least 2 non-isomorphic order-192 groups, multisets from the published 2-closed list; report documents candidate-relative completeness",
    );
}

#[test]
fn criterion_6_structure_verifier_suite() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for e in [2u64, 3, 5, 7] {
        let out = prime_census(e);
        for g in &out.groups {
            checked += 1;
            for c in &g.structure.checks {
                if c.status == CheckStatus::Fail {
                    failures.push(format!("e={e} {}: {}", g.recipe.describe(), c.name));
                }
            }
            // the named intro-theorem checks must be applicable passes
            for name in [
                "index_bounds",
                "minimal_normal_in_center_of_k",
                "op_nonabelian",
                "abelianization_divisible_by_e",
                "two_transitive_frobenius_decomposition",
            ] {
                assert_eq!(
                    g.structure.check(name).unwrap().status,
                    CheckStatus::Pass,
                    "{name} for {}",
                    g.recipe.describe()
                );
            }
        }
    }
    // degree 4: the semi-extraspecial branch must hold
    let out = classify_p_closed(
        4,
        vec![(
            Recipe::Family {
                family: "heisenberg".into(),
                params: vec![4],
            },
            heisenberg(4).unwrap(),
        )],
    )
    .unwrap();
    for g in &out.groups {
        checked += 1;
        let branch = g.structure.check("p2_closed_branch").unwrap();
        if branch.status != CheckStatus::Pass || !branch.note.contains("semi-extraspecial: true") {
            failures.push(format!("e=4 {}: p2_closed_branch {}", g.recipe.describe(), branch.note));
        }
        for c in &g.structure.checks {
            if c.status == CheckStatus::Fail {
                failures.push(format!("e=4 {}: {}", g.recipe.describe(), c.name));
            }
        }
    }
    let pass = failures.is_empty();
    report(
        "6 (structure verifier)",
        pass,
        t.elapsed(),
        &format!("{checked} census groups, zero failing checks {failures:?}"),
    );
}

#[test]
fn criterion_7_character_engine_properties() {
    let t = Instant::now();
    // the full pool of groups the acceptance run encounters, from order
    // 8 up to one order-5832 stretch construction
    let mut pool: Vec<CayleyGroup> = vec![
        dihedral(8),
        quaternion8(),
        cyclic(12),
        dihedral(6),
        extraspecial_p3(3, 3).unwrap(),
        extraspecial_p3(3, 9).unwrap(),
        direct_product(&cyclic(4), &cyclic(2)),
        heisenberg(4).unwrap(),
        field_frobenius_group(9).unwrap(),
        extraspecial_p3(5, 5).unwrap(),
        heisenberg(9).unwrap(),
    ];
    for e in [2u64, 3, 5] {
        pool.extend(prime_census(e).groups.iter().map(|g| g.group.clone()));
    }
    // one degree-9 group of order 5832 via a semilinear complement
    {
        use isaacs_core::aut::semilinear_automorphism;
        use isaacs_core::construct::{semidirect_product, ActionSpec, FiniteField};
        let f9 = FiniteField::new(9).unwrap();
        let h9 = heisenberg(9).unwrap();
        let alpha = semilinear_automorphism(&h9, &f9, f9.generator(), 1, 0).unwrap();
        let action = ActionSpec::new(&cyclic(8), &h9, &[1], &[alpha]).unwrap();
        pool.push(semidirect_product(&h9, &cyclic(8), &action).unwrap().group);
    }
    let mut violations = Vec::new();
    for g in &pool {
        let table = character_table_cached(g).unwrap();
        let sum_sq: u64 = table.degrees.iter().map(|d| d * d).sum();
        if sum_sq != g.order() as u64 {
            violations.push(format!("order {}: degree squares", g.order()));
        }
        if !table.verify_exact_orthogonality() {
            violations.push(format!("order {}: orthogonality", g.order()));
        }
        // Camina agreement is asserted internally (disagreement is a hard
        // error); exercise it over the center
        if g.center().order() > 1 && g.center().order() < g.order() {
            let _ = is_camina_pair(g, &g.center()).unwrap();
        }
        // gate passers: |Irr(G|N)| = 1
        let gate = isaacs_gate(g).unwrap();
        if gate.passed() {
            let n = gate.minimal_normal.as_ref().unwrap();
            let over = irr_over(g, &table, n);
            if over.len() != 1 {
                violations.push(format!("order {}: |Irr(G|N)| = {}", g.order(), over.len()));
            }
        }
    }
    let orders: Vec<usize> = pool.iter().map(|g| g.order()).collect();
    let pass = violations.is_empty()
        && orders.iter().any(|&o| o == 8)
        && orders.iter().any(|&o| o == 5832);
    report(
        "7 (character engine)",
        pass,
        t.elapsed(),
        &format!("{} groups, orders 8..=5832, violations: {violations:?}", pool.len()),
    );
}

#[test]
fn criterion_8_nonsolvable_complements() {
    let t = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    for (p, expected) in [(11u64, 120usize), (29, 840), (59, 3480)] {
        let each = Instant::now();
        let cert = sl25_complement(p).unwrap();
        let ok = cert.all_checks_pass()
            && cert.complement_order == expected
            && cert.orbit_size == expected
            && cert.sl_order == 120;
        pass &= ok;
        details.push(format!("p={p}: |H|={} in {:.1?}", cert.complement_order, each.elapsed()));
        if p == 11 {
            // the complement is not solvable
            let pg = cert.permutation_action();
            pass &= !pg.is_solvable();
        }
    }
    report(
        "8 (nonsolvable complements)",
        pass,
        t.elapsed(),
        &details.join("; "),
    );
}

#[test]
fn criterion_9_presentation_certificate() {
    let t = Instant::now();
    let pres = parse_presentation(NONSOLVABLE_CAMINA_25).unwrap();
    assert_eq!(pres.generators.len(), 8);
    let cert = certify_nonsolvable_camina(
        &pres,
        CertifyOptions {
            max_cosets: 2_000_000,
            locate_core: true,
            camina_samples: 0,
        },
    )
    .unwrap();
    let order_ok = cert.order == Some(375_000);
    let nonsolvable = cert.stage("nonsolvable").unwrap().status == CheckStatus::Pass;
    let core = cert.stage("o5_located_class_two").unwrap().status == CheckStatus::Pass;
    let pass = order_ok && nonsolvable && core && cert.passed();
    report(
        "9 (order-375000 certificate)",
        pass,
        t.elapsed(),
        &format!(
            "index 375000, nonsolvable on a faithful degree-3125 action, O_5 of class 2; stages: {:?}",
            cert.stages.iter().map(|s| (s.name, s.status)).collect::<Vec<_>>()
        ),
    );
}

/// Stretch criterion: non-blocking, run explicitly with `-- --ignored`.
#[test]
#[ignore = "stretch: degree-9 census over order-5832 tables, several minutes"]
fn criterion_10_degree_9_stretch() {
    let t = Instant::now();
    let out = classify_semilinear_stretch().unwrap();
    census_common_assertions(&out, 5832, 72);
    let published = [
        DegreeMultiset::from_pairs(&[(1, 8), (2, 4), (6, 12), (8, 3), (72, 1)]),
        DegreeMultiset::from_pairs(&[(1, 8), (4, 4), (8, 9), (72, 1)]),
        DegreeMultiset::from_pairs(&[(1, 72), (8, 9), (72, 1)]),
        DegreeMultiset::from_pairs(&[(1, 8), (2, 16), (8, 9), (72, 1)]),
    ];
    let all_published = out
        .groups
        .iter()
        .all(|g| published.contains(&g.degree_multiset));
    // the optional second clause: should a full automorphism-group
    // enumeration of Heisenberg(9) land within the caps, the
    // cyclic-complement search must reproduce the same four extensions;
    // exceeding a cap is reported and non-blocking
    let aut_note = match isaacs_core::aut::automorphism_group(&heisenberg(9).unwrap()) {
        Ok(aut) => {
            let witnesses = isaacs_core::aut::frobenius_transitive_subgroups(
                &heisenberg(9).unwrap(),
                &aut,
                8,
                isaacs_core::aut::ComplementShape::Cyclic,
            )
            .unwrap();
            format!(
                "full Aut landed: |Aut| = {}, {} cyclic complement subgroups",
                aut.order(),
                witnesses.len()
            )
        }
        Err(e) => format!("full Aut enumeration did not land ({e}); semilinear route stands"),
    };
    let pass = out.groups.len() >= 4 && all_published;
    report(
        "10 (e = 9 stretch)",
        pass,
        t.elapsed(),
        &format!(
            "{} non-isomorphic order-5832 groups with Heisenberg(9) Sylow subgroup, multisets {:?}; {}",
            out.groups.len(),
            out.groups
                .iter()
                .map(|g| g.degree_multiset.to_bracket_string())
                .collect::<Vec<_>>(),
            aut_note
        ),
    );
}

#[test]
fn criterion_11_arithmetic_round_trips() {
    let t = Instant::now();
    let mut pass = true;
    for e in 2u64..=100 {
        let order = e * e * e * e - e * e * e;
        match isaacs_degree(order) {
            Some(p) => pass &= p.e == e && p.d == e * e - e,
            None => pass &= isaacs_core::arith::is_prime_power(e).is_none(),
        }
    }
    let w = generalized_zsigmondy(2, 6);
    pass &= w.q == 3 && w.n == 2 && w.validate();
    // Mersenne base with a = 2: q = 2
    for m in [3u64, 7, 31] {
        let w = generalized_zsigmondy(m, 2);
        pass &= w.q == 2 && w.validate();
    }
    // every witness self-validates across a sweep
    for e in 3u64..=100 {
        if let Some((p, a)) = isaacs_core::arith::is_prime_power(e) {
            pass &= generalized_zsigmondy(p, a).validate();
        }
    }
    report(
        "11 (arithmetic round trips)",
        pass,
        t.elapsed(),
        "degree extraction for e in 2..=100; stated witnesses for (2,6) and Mersenne a = 2",
    );
}
