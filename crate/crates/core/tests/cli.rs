use std::path::PathBuf;
use std::process::{Command, Output};

use decalg::cli::{execute_args, reproduce, Status, EXAMPLE_IDS};
use serde_json::Value;

fn example(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", "examples", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn decalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decalg")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn every_example_reproduces() {
    for id in EXAMPLE_IDS {
        let outcome = reproduce(id).unwrap();
        assert_eq!(outcome.status, Status::Valid, "{id}: {}", outcome.report);
        assert_eq!(outcome.report["passed"], true);
        assert_eq!(outcome.report["id"], *id);
    }
    assert!(reproduce("no-such-example").is_err());
}

#[test]
fn grade_reports_z2() {
    let out = decalg(&["grade", &example("ising.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["abelian"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(r["abelian"]["map"]["t"], serde_json::json!([1]));
    assert_eq!(r["abelian"]["map"]["q"], serde_json::json!([0]));
}

#[test]
fn grade_enumerates_the_finest_group() {
    let outcome = execute_args(["decalg", "grade", "--enumerate", &example("jordan.json")]).unwrap();
    assert_eq!(outcome.status, Status::Valid);
    assert!(outcome.report.get("abelian").is_some());
}

#[test]
fn verify_and_pushforward() {
    let out = decalg(&["verify", &example("peirce_j3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["report"]["primitive"], true);

    let out = decalg(&["pushforward", &example("j3_three_peirce.json"), &example("jordan_to_z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["report"]["valid"], true);
    assert_eq!(r["report"]["part_dims"][0], serde_json::json!({ "0": 5, "1": 4 }));
}

#[test]
fn group_and_table_commands() {
    let r = execute_args(["decalg", "classlaw", "catalog:Q8"]).unwrap();
    assert_eq!(r.status, Status::Valid);
    assert_eq!(r.report["abelianization"], serde_json::json!([2, 2]));

    let r = execute_args(["decalg", "classlaw", &example("s3.json")]).unwrap();
    assert_eq!(r.report["matches_abelianization"], true);

    let r = execute_args(["decalg", "replaw", &example("s3_table.json")]).unwrap();
    assert_eq!(r.status, Status::Valid);
    assert_eq!(r.report["center"]["center_order"], 1);

    let r = execute_args(["decalg", "isotypic", &example("s3_permutation_rep.json"), &example("s3_table.json")]).unwrap();
    assert_eq!(r.status, Status::Valid);
}

#[test]
fn miyamoto_on_three_peirce_idempotents() {
    let out = decalg(&["miyamoto", &example("j3_three_peirce.json"), "--universal"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["closed"], true);
    assert!(r.get("universal").is_some());
}

#[test]
fn scheme_then_norton() {
    let dir = std::env::temp_dir().join(format!("decalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let scheme = dir.join("scheme.json");
    let scheme = scheme.to_str().unwrap();
    let out = decalg(&["scheme", "catalog:S5", "--domain", "subsets:2", "--scheme-out", scheme]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["bose_mesner"]["dims"], serde_json::json!([1, 4, 5]));

    let written: Value = serde_json::from_str(&std::fs::read_to_string(scheme).unwrap()).unwrap();
    let shipped: Value = serde_json::from_str(&std::fs::read_to_string(example("johnson_5_2.json")).unwrap()).unwrap();
    assert_eq!(written, shipped);

    let out = decalg(&["norton", scheme, "--eigenspace", "1", "--certify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["certificate"]["summary"]["axes"], 10);

    let report_file = dir.join("report.json");
    let out = decalg(&["-o", report_file.to_str().unwrap(), "norton", scheme, "--eigenspace", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report_file).unwrap()).unwrap();
    assert_eq!(r["dim"], 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cyclic_scheme_needs_complex_scalars() {
    let out = decalg(&["scheme", "catalog:C3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["bose_mesner"]["scalars"], "complex");
    let out = decalg(&["--scalars", "rational", "scheme", "catalog:C3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    let out = decalg(&["verify", "/nonexistent/decalg.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["exit_code"], 2);
    assert_eq!(decalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(decalg(&["reproduce", "nope"]).status.code(), Some(2));
    assert_eq!(decalg(&["--tolerance", "-1", "grade", &example("jordan.json")]).status.code(), Some(2));
    // A fusion law is not a decomposition algebra.
    assert_eq!(decalg(&["verify", &example("jordan.json")]).status.code(), Some(2));
}

#[test]
fn unknown_catalog_group_is_rejected() {
    let out = decalg(&["classlaw", "catalog:M24"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report(&out)["error"].as_str().unwrap().contains("M24"));
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["grade", "--enumerate", &example("ising.json")].into_iter().map(String::from).collect::<Vec<_>>(),
        vec!["miyamoto".into(), example("j3_three_peirce.json"), "--universal".into(), "--central-check".into()],
        vec!["reproduce".into(), "s3-transpositions".into()],
        vec!["scheme".into(), "catalog:S4".into(), "--domain".into(), "subsets:2".into()],
    ];
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = decalg(&args);
        let second = decalg(&args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
