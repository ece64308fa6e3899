//! The `isaacs` command line: censuses of the groups attaining
//! `|G| = e^4 - e^3`, per-group gate and structure verification,
//! character tables, automorphism searches, and coset enumeration with
//! the order-375000 certificate. Exit code 0 means every asserted count
//! and check passed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use isaacs_core::aut::{
    automorphism_group, frobenius_transitive_subgroups, ComplementShape,
};
use isaacs_core::census::{
    classify_e_prime, classify_p_closed, classify_semilinear_stretch, emit_report, isaacs_gate,
    verify_structure, CheckStatus, Recipe,
};
use isaacs_core::chartab::character_table_cached;
use isaacs_core::construct::{
    cyclic, dihedral, elementary_abelian, extraspecial_p3, field_frobenius_group, heisenberg,
    quaternion8, sl25_complement, special_linear_2,
};
use isaacs_core::fp::{
    certify_nonsolvable_camina, parse_presentation, todd_coxeter, CertifyOptions,
};
use isaacs_core::group::{cayley_to_json, parse_group_json, AnyGroup, CayleyGroup};

#[derive(Parser)]
#[command(name = "isaacs", version, about = "censuses and certificates for groups at the character-degree bound |G| = e^4 - e^3")]
struct Cli {
    /// worker threads for census candidate processing
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Cyclic,
    Quaternion8,
    Order24,
    Any,
}

#[derive(Subcommand)]
enum Command {
    /// Run the census for a degree e and check the expected counts
    Census {
        #[arg(long)]
        e: u64,
        /// allow the long-running degree-9 semilinear census
        #[arg(long)]
        stretch: bool,
        /// write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gate a group file: the five entrance conditions, reported individually
    Gate {
        #[arg(long)]
        group: PathBuf,
    },
    /// Gate a group file and run the full structure verifier
    Verify {
        #[arg(long)]
        group: PathBuf,
    },
    /// Exact character table of a group file as JSON
    Chartable {
        #[arg(long)]
        group: PathBuf,
    },
    /// Automorphism group of a group file; optionally search complements
    Aut {
        #[arg(long)]
        group: PathBuf,
        /// also search Frobenius-transitive complements of this order
        #[arg(long)]
        complement_order: Option<usize>,
        #[arg(long, value_enum, default_value = "any")]
        shape: ShapeArg,
    },
    /// Coset enumeration over a presentation file
    Tc {
        #[arg(long)]
        presentation: PathBuf,
        /// comma-separated generator names spanning the subgroup
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, default_value_t = 2_000_000)]
        max_cosets: usize,
        /// run the nonsolvable-Camina certificate stages
        #[arg(long)]
        certify: bool,
        /// with --certify: locate O_5(G) and verify its class
        #[arg(long)]
        locate_core: bool,
        /// with --certify: sampled Camina-pair checks (0 = skip)
        #[arg(long, default_value_t = 0)]
        camina_samples: usize,
    },
    /// Build a named group and write it as a group file
    Construct {
        #[arg(long)]
        family: String,
        /// numeric parameters, e.g. --param 9
        #[arg(long = "param")]
        params: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_cayley(path: &PathBuf) -> Result<CayleyGroup, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    match parse_group_json(&text).map_err(|e| e.to_string())? {
        AnyGroup::Cayley(g) => Ok(g),
        AnyGroup::Perm(pg) => {
            let (g, _) = CayleyGroup::from_permutation_group(&pg).map_err(|e| e.to_string())?;
            Ok(g)
        }
    }
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    match cli.command {
        Command::Census { e, stretch, out } => {
            let outcome = match e {
                2 | 3 | 5 | 7 => classify_e_prime(e).map_err(|e| e.to_string())?,
                4 => {
                    let candidates = vec![(
                        Recipe::Family {
                            family: "heisenberg".into(),
                            params: vec![4],
                        },
                        heisenberg(4).map_err(|e| e.to_string())?,
                    )];
                    classify_p_closed(4, candidates).map_err(|e| e.to_string())?
                }
                9 => {
                    if !stretch {
                        return Err(
                            "the degree-9 census is a stretch computation; pass --stretch".into()
                        );
                    }
                    classify_semilinear_stretch().map_err(|e| e.to_string())?
                }
                other => {
                    return Err(format!(
                        "no census is implemented for e = {other}; supported: 2, 3, 5, 7 (complete), 4 (candidate-relative), 9 (--stretch)"
                    ))
                }
            };
            let ok = outcome.assert_pairwise_non_isomorphic();
            let report = emit_report(&outcome);
            println!(
                "census e = {}: {} pairwise non-isomorphic groups",
                report.e,
                report.groups.len()
            );
            for g in &report.groups {
                println!(
                    "  {} order={} p_closed={} sylow_exponent={} multiset={} checks={}",
                    g.hash.get(..12).unwrap_or(&g.hash),
                    g.order,
                    g.p_closed,
                    g.sylow_exponent,
                    g.degree_multiset_bracket,
                    if g.checks.values().all(|&s| s != CheckStatus::Fail) {
                        "pass"
                    } else {
                        "FAIL"
                    }
                );
            }
            println!("completeness: {}", report.completeness);
            let all_checks = report.all_checks_pass();
            if let Some(path) = out {
                std::fs::write(&path, report.to_json_pretty())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                println!("report written to {}", path.display());
            }
            Ok(ok && all_checks)
        }
        Command::Gate { group } => {
            let g = load_cayley(&group)?;
            let gate = isaacs_gate(&g).map_err(|e| e.to_string())?;
            for (name, s) in &gate.conditions {
                println!("  [{s}] {name}");
            }
            if let Some(p) = gate.params {
                println!("parameters: e = {}, p = {}, a = {}, d = {}", p.e, p.p, p.a, p.d);
            }
            println!("gate: {}", if gate.passed() { "pass" } else { "fail" });
            Ok(gate.passed())
        }
        Command::Verify { group } => {
            let g = load_cayley(&group)?;
            let gate = isaacs_gate(&g).map_err(|e| e.to_string())?;
            for (name, s) in &gate.conditions {
                println!("  [{s}] gate: {name}");
            }
            if !gate.passed() {
                println!("gate failed; the structure verifier refuses input that is not an Isaacs group");
                return Ok(false);
            }
            let report = verify_structure(&g, &gate).map_err(|e| e.to_string())?;
            for c in &report.checks {
                println!("  [{}] {} -- {}", c.status, c.name, c.note);
            }
            println!(
                "structure: e = {}, |K| = {}, |Z(K)| = {}, |K'| = {}, p_closed = {}, class(K) = {:?}",
                report.e, report.k_order, report.zk_order, report.kprime_order, report.p_closed,
                report.k_nilpotence_class
            );
            Ok(report.all_applicable_pass())
        }
        Command::Chartable { group } => {
            let g = load_cayley(&group)?;
            let t = character_table_cached(&g).map_err(|e| e.to_string())?;
            let classes: Vec<serde_json::Value> = t
                .classes
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "rep": c.rep,
                        "size": c.size,
                        "element_order": c.elem_order,
                    })
                })
                .collect();
            let values: Vec<Vec<Vec<i64>>> = t
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.coeffs().to_vec()).collect())
                .collect();
            let doc = serde_json::json!({
                "order": t.group_order,
                "exponent": t.exponent,
                "modular_prime": t.dixon_prime,
                "classes": classes,
                "degrees": t.degrees,
                "degree_multiset": t.degree_multiset().to_bracket_string(),
                "values_as_root_coefficients": values,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            Ok(true)
        }
        Command::Aut {
            group,
            complement_order,
            shape,
        } => {
            let g = load_cayley(&group)?;
            let aut = automorphism_group(&g).map_err(|e| e.to_string())?;
            println!("|Aut| = {}", aut.order());
            let pg = aut.permutation_group(&g);
            println!("generators (as permutations of element indices):");
            for gen in pg.generators() {
                println!("  {:?}", gen.images());
            }
            if let Some(n) = complement_order {
                let shape = match shape {
                    ShapeArg::Cyclic => ComplementShape::Cyclic,
                    ShapeArg::Quaternion8 => ComplementShape::Quaternion8,
                    ShapeArg::Order24 => ComplementShape::Order24C3ByC8,
                    ShapeArg::Any => ComplementShape::Any,
                };
                let found = frobenius_transitive_subgroups(&g, &aut, n, shape)
                    .map_err(|e| e.to_string())?;
                println!(
                    "Frobenius-transitive complements of order {n}: {} subgroup(s)",
                    found.len()
                );
                for w in &found {
                    println!("  shape {:?}, generator element indices {:?}", w.shape, w.generators);
                }
            }
            Ok(true)
        }
        Command::Tc {
            presentation,
            subgroup,
            max_cosets,
            certify,
            locate_core,
            camina_samples,
        } => {
            let text = std::fs::read_to_string(&presentation)
                .map_err(|e| format!("{}: {e}", presentation.display()))?;
            let pres = parse_presentation(&text).map_err(|e| e.to_string())?;
            println!(
                "presentation: {} generators, {} relators",
                pres.generators.len(),
                pres.relators.len()
            );
            if certify {
                let cert = certify_nonsolvable_camina(
                    &pres,
                    CertifyOptions {
                        max_cosets,
                        locate_core,
                        camina_samples,
                    },
                )
                .map_err(|e| e.to_string())?;
                for s in &cert.stages {
                    println!("  [{}] {} -- {}", s.status, s.name, s.detail);
                }
                return Ok(cert.passed());
            }
            let words = match &subgroup {
                Some(names) => pres.subgroup_words(names).map_err(|e| e.to_string())?,
                None => Vec::new(),
            };
            match todd_coxeter(&pres, &words, max_cosets) {
                Ok(t) => {
                    println!(
                        "index {} ({} cosets defined)",
                        t.index(),
                        t.cosets_defined
                    );
                    Ok(true)
                }
                Err(e) => {
                    println!("{e}");
                    Ok(false)
                }
            }
        }
        Command::Construct { family, params, out } => {
            let g = match (family.as_str(), params.as_slice()) {
                ("cyclic", [n]) => cyclic(*n as usize),
                ("dihedral", [n]) => dihedral(*n as usize),
                ("quaternion8", []) => quaternion8(),
                ("elementary_abelian", [p, k]) => elementary_abelian(*p, *k as u32),
                ("extraspecial_p3", [p, e]) => {
                    extraspecial_p3(*p, *e).map_err(|e| e.to_string())?
                }
                ("heisenberg", [q]) => heisenberg(*q).map_err(|e| e.to_string())?,
                ("field_frobenius", [q]) => {
                    field_frobenius_group(*q).map_err(|e| e.to_string())?
                }
                ("special_linear_2", [p]) => special_linear_2(*p).map_err(|e| e.to_string())?,
                ("sl25_complement", [p]) => {
                    let cert = sl25_complement(*p).map_err(|e| e.to_string())?;
                    println!(
                        "complement order {}, fixed-point-free: {}, orbit: {}",
                        cert.complement_order, cert.fixed_point_free, cert.orbit_size
                    );
                    let pg = cert.permutation_action();
                    let text = isaacs_core::group::perm_to_json(&pg);
                    std::fs::write(&out, text).map_err(|e| format!("{}: {e}", out.display()))?;
                    println!("written to {}", out.display());
                    return Ok(cert.all_checks_pass());
                }
                (f, ps) => {
                    return Err(format!(
                        "unknown family `{f}` with {} parameter(s); known: cyclic(n), dihedral(2n), quaternion8, elementary_abelian(p,k), extraspecial_p3(p,exp), heisenberg(q), field_frobenius(q), special_linear_2(p), sl25_complement(p)",
                        ps.len()
                    ))
                }
            };
            std::fs::write(&out, cayley_to_json(&g)).map_err(|e| format!("{}: {e}", out.display()))?;
            println!("order {} written to {}", g.order(), out.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
