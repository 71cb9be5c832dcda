use std::path::PathBuf;

use cohom_cli::{run, ReportDocument};
use cohom_core::ComparisonReport;

fn cohom(args: &[&str]) -> cohom_cli::Output {
    run(std::iter::once("cohom").chain(args.iter().copied()))
}

// Set COHOM_BLESS=1 to rewrite the files after an intended change.
fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("COHOM_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden file {name} differs");
}

#[test]
fn cohomology_of_odd_grassmannian() {
    let out = cohom(&["cohomology", "g2+:7"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "(Z,0,Z,0,Z,0,Z,0,Z,0,Z)\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn odd_pages_match_golden() {
    let out = cohom(&["gysin", "--total", "v2:7", "--base", "g2+:7", "--mode", "verify", "--print-pages"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    golden("gysin_g2p7.txt", &out.stdout);
}

#[test]
fn even_pages_match_golden() {
    let out = cohom(&["gysin", "--total", "v2:8", "--base", "g2+:8", "--print-pages"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stderr.starts_with("note: g2+:8@corrected uses a corrected presentation"));
    golden("gysin_g2p8.txt", &out.stdout);
}

#[test]
fn derive_d2_reports_the_doubling() {
    let out = cohom(&["gysin", "--total", "v2:7", "--base", "g2+:7", "--mode", "derive-d2"]);
    assert_eq!(out.code, 0);
    golden("derive_d2_g2p7.txt", &out.stdout);
}

#[test]
fn wrong_total_space_fails_checks() {
    let out = cohom(&["gysin", "--total", "v2:9", "--base", "g2+:7"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("MISMATCH"));
}

#[test]
fn verbatim_even_presentation_fails_validation() {
    let out = cohom(&["validate", "g2+:8@verbatim"]);
    assert_eq!(out.code, 1);
    golden("validate_g2p8_verbatim.txt", &out.stdout);
    assert_eq!(cohom(&["validate", "g2+:8"]).code, 0);
}

#[test]
fn hopf_homotopy() {
    let out = cohom(&["homotopy", "hopf:5"]);
    assert_eq!(out.code, 0);
    golden("homotopy_hopf5.txt", &out.stdout);
}

#[test]
fn compare_text_and_json() {
    let out = cohom(&["compare", "g2+:7", "cp:5"]);
    assert_eq!(out.code, 0);
    golden("compare_g2p7_cp5.txt", &out.stdout);
    let js = cohom(&["--format", "json", "compare", "g2+:7", "cp:5"]);
    let r: ComparisonReport = serde_json::from_str(&js.stdout).unwrap();
    assert_eq!(r.verdict, "cohomology-equal, not homotopy-equivalent");
    let v: serde_json::Value = serde_json::from_str(&js.stdout).unwrap();
    for key in ["spaces", "groups_equal", "first_group_mismatch", "power_indices", "iso_search", "pi_first_difference", "verdict"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["iso_search"].get("bound").is_some() && v["iso_search"].get("result").is_some());
}

#[test]
fn report_json_round_trips() {
    let out = cohom(&["report", "--k", "3", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let doc: ReportDocument = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", out.stdout);
    assert!(doc.checks.iter().all(|c| c.passed));
}

#[test]
fn report_at_k2_includes_the_product_of_spheres() {
    let out = cohom(&["report", "--k", "2"]);
    assert!(out.stdout.contains("even.s2xs2-witness"));
}

#[test]
fn presentation_files() {
    let path = std::env::temp_dir().join(format!("cohom-test-{}.pres", std::process::id()));
    std::fs::write(&path, "gen x2 2\ngen x6 6\nrel x2^3 - 2*x6\nrel x6^2\ntop 10\n").unwrap();
    let p = path.to_str().unwrap();
    let out = cohom(&["cohomology", "--presentation", p]);
    assert_eq!(out.stdout, "(Z,0,Z,0,Z,0,Z,0,Z,0,Z)\n");
    let ring = cohom(&["ring", "--presentation", p]);
    assert!(ring.stdout.contains("x2 * x2^2 = 2*x6"), "{}", ring.stdout);
    std::fs::write(&path, "gen x 2\nrel x^2 + x\n").unwrap();
    let bad = cohom(&["cohomology", "--presentation", p]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.starts_with("error:"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["cohomology", "cp:0"][..],
        &["cohomology", "g2+:3"],
        &["cohomology", "xx:4"],
        &["gysin", "--total", "v2:7"],
        &["report", "--k", "5..3"],
        &["homotopy", "grass:3"],
        &["cohomology", "cp:3", "--frobnicate"],
    ] {
        assert_eq!(cohom(args).code, 2, "{args:?}");
    }
    let help = cohom(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn ring_json_is_a_dump() {
    let out = cohom(&["--format", "json", "ring", "cp:3"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["top_degree"], 8);
}
