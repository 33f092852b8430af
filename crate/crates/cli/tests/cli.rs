use std::path::PathBuf;

use moriwaki_cli::{run, Outcome};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn moriwaki(args: &[&str]) -> Outcome {
    let empty = fixture("empty.json");
    let mut full = vec!["moriwaki", "--config", empty.as_str()];
    full.extend_from_slice(args);
    run(full)
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid json")
}

fn value<'a>(v: &'a Value, path: &[&str]) -> &'a Value {
    path.iter().fold(v, |acc, k| &acc[*k])
}

#[test]
fn classify_canonical_g3() {
    let r = json(&moriwaki(&["classify", "-g", "3", "K"]));
    let o = &r["outputs"];
    assert_eq!(o["classification"]["verdict"], "Outside");
    assert_eq!(o["classification"]["violated"], serde_json::json!(["Delta0"]));
    assert_eq!(o["base_locus"]["statement"], "BminusMeetsInterior");
    assert_eq!(r["schema_version"], "1");
    assert_eq!(value(o, &["class", "a", "provenance"]), "paper-formula");
}

#[test]
fn classify_lambda_is_satake_type() {
    let o = json(&moriwaki(&["classify", "-g", "3", "lambda"]))["outputs"].clone();
    assert_eq!(o["classification"]["verdict"], "StrictInterior");
    assert_eq!(o["base_locus"]["statement"], "BplusEqualsBoundary");
    assert_eq!(o["satake_type"], true);
}

#[test]
fn classify_zero_class() {
    let o = json(&moriwaki(&["classify", "-g", "3", "0", "0", "0"]))["outputs"].clone();
    assert_eq!(o["zero"], true);
    assert_eq!(o["classification"]["verdict"], "Boundary");
    assert_eq!(value(&o, &["class", "a", "provenance"]), "input");
}

#[test]
fn classify_moriwaki_decomposes_with_beta_one() {
    let o = json(&moriwaki(&["classify", "-g", "7", "M"]))["outputs"].clone();
    assert_eq!(value(&o, &["decomposition", "beta", "value"]), "1");
    assert!(o["pairings"].as_array().unwrap().iter().skip(1).all(|p| p["pairing"]["value"] == "0"));
}

#[test]
fn certify_big_g5() {
    let o = json(&moriwaki(&["certify-big", "-g", "5"]))["outputs"].clone();
    let c = &o["certificates"][0];
    assert_eq!(c["v"]["value"], "5");
    assert_eq!(c["witness"]["kind"], "BrillNoether");
    assert_eq!(c["verified"], true);
}

#[test]
fn certify_big_range_3_to_50() {
    let o = json(&moriwaki(&["certify-big", "--range", "3..50"]))["outputs"].clone();
    let certs = o["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 48);
    assert_eq!(o["count"], 48);
    let genera: Vec<u64> = certs.iter().map(|c| c["genus"].as_u64().unwrap()).collect();
    assert_eq!(genera, (3..=50).collect::<Vec<_>>());
    assert!(certs.iter().all(|c| c["verified"] == true));
}

#[test]
fn certify_big_explicit_failure_exits_one() {
    let out = moriwaki(&["certify-big", "-g", "3", "--divisor", "K", "--witness", "BN"]);
    assert_eq!(out.code, 1);
    let r: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r["outputs"]["certified"], false);
    assert_eq!(r["outputs"]["failed"][0]["name"], "C0");
}

#[test]
fn certify_big_explicit_success() {
    let o = json(&moriwaki(&["certify-big", "-g", "4", "--divisor", "M", "--witness", "PetriHat"]))["outputs"].clone();
    assert_eq!(o["certificate"]["v"]["value"], "2/3");
    assert_eq!(o["certificate"]["lambda_part"]["value"], "2");
}

#[test]
fn audit_petri_small() {
    let o = json(&moriwaki(&["audit-petri", "--d-max", "4", "--poly-max", "100"]))["outputs"].clone();
    let recs = o["records"].as_array().unwrap();
    assert_eq!(recs[0]["vacuous"], true);
    assert_eq!(recs[1]["gammas"][0]["gamma"]["value"], "4");
    assert_eq!(o["all_hold"], true);
    assert_eq!(o["polynomials"].as_array().unwrap().len(), 6);

    let o = json(&moriwaki(&["audit-petri", "--d-max", "3", "--brief", "--poly-max", "10"]))["outputs"].clone();
    assert_eq!(o["records"].as_array().unwrap().len(), 1);
    assert_eq!(o["records"][0]["vacuous"], true);
}

#[test]
fn section_csv_and_warning() {
    let out = moriwaki(&["section", "-g", "3", "--csv"]);
    assert_eq!(out.code, 0);
    for row in ["mor,28,3", "nef,11,1", "nef,1,0"] {
        assert!(out.stdout.lines().any(|l| l == row), "{row} missing");
    }
    let out = moriwaki(&["section", "-g", "4", "--csv"]);
    assert_eq!(out.code, 0);
    assert!(!out.stdout.contains("psef"));
    assert!(out.stderr.contains("warning"));
}

#[test]
fn section_writes_artifact_file() {
    let path = std::env::temp_dir().join(format!("moriwaki-section-{}.svg", std::process::id()));
    let p = path.display().to_string();
    let r = json(&moriwaki(&["section", "-g", "24", "--svg", "--out", &p]));
    assert_eq!(r["inputs"]["out"], p.as_str());
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(svg.contains(r#"data-ray-a="162" data-ray-b="25""#));
}

#[test]
fn section_respects_config() {
    let custom = fixture("custom.json");
    let out = run(["moriwaki", "--config", custom.as_str(), "section", "-g", "4", "--csv"]);
    assert!(out.stdout.contains("psef,13,2"));
    assert!(out.stdout.contains("nef,12,1"));
    let out = run(["moriwaki", "section", "-g", "24", "--csv", "--config", custom.as_str()]);
    assert!(!out.stdout.contains("psef"));
}

#[test]
fn alpha_threshold_g3() {
    let o = json(&moriwaki(&["alpha", "-g", "3", "17/28"]))["outputs"].clone();
    assert_eq!(o["regime"], "ContractsHyperelliptic");
    assert_eq!(o["cornalba_harris_factor"]["value"], "13/28");
    assert_eq!(o["alpha_nef"]["value"], "9/11");
    assert_eq!(o["alpha_nef"]["provenance"], "config");
}

#[test]
fn obstruction_canonical_g22() {
    let o = json(&moriwaki(&["obstruction", "-g", "22", "K"]))["outputs"].clone();
    assert_eq!(o["verdict"], "NoZariskiDecomposition");
    assert_eq!(o["witness"]["facet"], "Delta0");
    assert!(o["narrative"].as_str().unwrap().contains("flip"));

    let o = json(&moriwaki(&["obstruction", "-g", "21", "K"]))["outputs"].clone();
    assert_eq!(o["verdict"], "NoObstruction");
    let o = json(&moriwaki(&["obstruction", "-g", "21", "K", "--kappa", "true"]))["outputs"].clone();
    assert_eq!(o["verdict"], "NoZariskiDecomposition");
}

#[test]
fn negative_rationals_as_positionals() {
    let r = json(&moriwaki(&["classify", "-g", "3", "-1/3", "-2", "1"]));
    assert_eq!(r["inputs"]["class"][0], "-1/3");
    assert_eq!(r["outputs"]["class"]["display"], "(-1/3; -2, 1)");
}

#[test]
fn exit_codes() {
    assert_eq!(moriwaki(&["certify-big", "-g", "2"]).code, 3);
    assert_eq!(moriwaki(&["alpha", "-g", "3", "2"]).code, 3);
    assert_eq!(moriwaki(&["alpha", "-g", "3", "x"]).code, 2);
    assert_eq!(moriwaki(&["classify", "-g", "3", "1", "2"]).code, 2);
    assert_eq!(moriwaki(&["classify", "-g", "3", "nonsense"]).code, 2);
    assert_eq!(moriwaki(&["classify", "-g", "4", "BN"]).code, 3);
    assert_eq!(moriwaki(&["certify-big", "--range", "9..3"]).code, 2);
    assert_eq!(moriwaki(&["audit-petri", "--d-max", "2"]).code, 3);
    assert_eq!(moriwaki(&["section", "-g", "5", "--out", "x.csv"]).code, 2);
    assert_eq!(moriwaki(&["frobnicate"]).code, 2);
    assert_eq!(run(["moriwaki", "--config", "/nonexistent/moriwaki.json", "classify", "-g", "3", "K"]).code, 2);
    let help = moriwaki(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("certify-big"));
}
