//! End-to-end runs of the binary: exit codes carry the verdicts.

use std::process::Command;

fn isaacs() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isaacs"))
}

#[test]
fn census_e2_succeeds_and_reports() {
    let dir = std::env::temp_dir().join("isaacs-cli-test-census");
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let out = isaacs()
        .args(["census", "--e", "2", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("2 pairwise non-isomorphic groups"), "{stdout}");
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"e\": 2"));
    // byte-identical on a second run
    let report2 = dir.join("report2.json");
    let out = isaacs()
        .args(["census", "--e", "2", "--out"])
        .arg(&report2)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(text, std::fs::read_to_string(&report2).unwrap());
}

#[test]
fn construct_gate_verify_round_trip() {
    let dir = std::env::temp_dir().join("isaacs-cli-test-gate");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("q8.json");
    let out = isaacs()
        .args(["construct", "--family", "quaternion8", "--out"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = isaacs().args(["gate", "--group"]).arg(&file).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("gate: pass"));

    let out = isaacs().args(["verify", "--group"]).arg(&file).output().unwrap();
    assert!(out.status.success());

    // a non-Isaacs group fails the gate, exit code nonzero
    let c12 = dir.join("c12.json");
    isaacs()
        .args(["construct", "--family", "cyclic", "--param", "12", "--out"])
        .arg(&c12)
        .output()
        .unwrap();
    let out = isaacs().args(["gate", "--group"]).arg(&c12).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn chartable_emits_multiset() {
    let dir = std::env::temp_dir().join("isaacs-cli-test-chartable");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("d8.json");
    isaacs()
        .args(["construct", "--family", "dihedral", "--param", "8", "--out"])
        .arg(&file)
        .output()
        .unwrap();
    let out = isaacs()
        .args(["chartable", "--group"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("[<1,4>,<2,1>]"), "{stdout}");
}

#[test]
fn tc_small_presentation() {
    let dir = std::env::temp_dir().join("isaacs-cli-test-tc");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("s3.txt");
    std::fs::write(&file, "< a, b | a^3, b^2, (a*b)^2 >").unwrap();
    let out = isaacs()
        .args(["tc", "--presentation"])
        .arg(&file)
        .args(["--subgroup", "b"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("index 3"));
}

#[test]
fn aut_with_complement_search() {
    let dir = std::env::temp_dir().join("isaacs-cli-test-aut");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("es27.json");
    isaacs()
        .args([
            "construct",
            "--family",
            "extraspecial_p3",
            "--param",
            "3",
            "--param",
            "3",
            "--out",
        ])
        .arg(&file)
        .output()
        .unwrap();
    let out = isaacs()
        .args(["aut", "--group"])
        .arg(&file)
        .args(["--complement-order", "2", "--shape", "cyclic"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("|Aut| = 432"), "{stdout}");
    assert!(stdout.contains("complements of order 2"), "{stdout}");
}
