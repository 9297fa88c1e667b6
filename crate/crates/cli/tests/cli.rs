use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn thetakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetakit"))
        .args(args)
        .env("THETAKIT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn validate(name: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    assert!(
        msgs.is_empty(),
        "{name} report violates its schema: {msgs:?}"
    );
}

/// Runs twice, checks byte-identical output, schema and exit code.
fn check(name: &str, args: &[&str], code: i32) -> Value {
    let a = thetakit(args);
    let b = thetakit(args);
    assert_eq!(
        a.status.code(),
        Some(code),
        "{name}: {}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout, "{name} output is not deterministic");
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    validate(name, &doc);
    doc
}

#[test]
fn lcan_report() {
    let doc = check("lcan", &["lcan", "--sig", "2,2", "--kappa", "2,0,2,0"], 0);
    let terms = doc["report"]["canonical"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], "1");
    assert_eq!(doc["report"]["max_abs_coeff"], "1");
}

#[test]
fn phi_report() {
    let doc = check("phi", &["phi", "--sig", "2,2", "--kappa", "1,1,1,1"], 0);
    assert_eq!(doc["report"]["equivalence"]["status"], "equal");
    let doc = check("phi", &["phi", "--sig", "2,2", "--kappa", "2,0,1,1"], 0);
    assert!(doc["report"]["equivalence"].is_null());
    assert!(doc["report"]["polynomial"]["terms"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn theta_apply_report() {
    let doc = check(
        "theta-apply",
        &[
            "theta-apply",
            "--sig",
            "2,2",
            "--kappa",
            "1,0,1,0",
            "--witness",
            "alpha:2,0,0,1",
        ],
        0,
    );
    let terms = doc["report"]["output"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"]["residue"], "2");
}

#[test]
fn congruence_reports() {
    let doc = check(
        "congruence",
        &[
            "congruence",
            "--M",
            "3",
            "--sig",
            "1,1",
            "--kappa",
            "1,1",
            "--kappa-prime",
            "21,21",
        ],
        2,
    );
    assert_eq!(doc["report"]["witness"]["alpha"], serde_json::json!([5]));
    assert_eq!(doc["report"]["label"], "hypotheses not met - informational");
    let doc = check(
        "congruence",
        &[
            "congruence",
            "--M",
            "3",
            "--sig",
            "1,1",
            "--kappa",
            "2,2",
            "--kappa-prime",
            "22,22",
        ],
        0,
    );
    assert_eq!(doc["report"]["label"], "theorem");
}

#[test]
fn restrict_reports() {
    check(
        "restrict",
        &[
            "restrict", "--sig", "2,2", "--part", "1,1/1,1", "--lambda", "2,0,2,0",
        ],
        0,
    );
    let doc = check(
        "restrict",
        &[
            "restrict", "--sig", "2,2", "--part", "1,1/1,1", "--lambda", "1,1,1,1",
        ],
        2,
    );
    assert_eq!(doc["report"]["hypotheses_met"], false);
}

#[test]
fn weyl_extend_report() {
    let doc = check(
        "weyl-extend",
        &[
            "weyl-extend",
            "--sig",
            "2,2",
            "--part",
            "1,1/1,1",
            "--lambda",
            "0,2,0,2",
            "--witness",
            "grid",
            "--grid-bound",
            "2",
        ],
        0,
    );
    assert_eq!(doc["report"]["block_index"], 1);
    assert_eq!(
        doc["report"]["lambda0"]["entries"],
        serde_json::json!([[2, 0, 2, 0]])
    );
}

#[test]
fn family_report_and_csv() {
    let doc = check(
        "family",
        &["family", "--n", "1", "--k", "3", "--cap", "5"],
        0,
    );
    let coeffs: Vec<&str> = doc["report"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["coeff"]["residue"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["1", "4", "9", "16", "0"]);
    let csv = thetakit(&[
        "family", "--n", "1", "--k", "3", "--cap", "3", "--format", "csv",
    ]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "alpha,coeff\n\"1\",1\n\"2\",4\n\"3\",9\n"
    );
}

#[test]
fn certify_reports() {
    let ok = check(
        "certify",
        &[
            "certify",
            "--M",
            "3",
            "--n",
            "1",
            "--k",
            "2",
            "--k-prime",
            "6",
            "--kappa",
            "1,1",
            "--kappa-prime",
            "1,1",
            "--cap",
            "4",
        ],
        0,
    );
    assert_eq!(ok["report"]["outcomes"][0]["status"], "ok");
    let none = check(
        "certify",
        &[
            "certify",
            "--M",
            "3",
            "--n",
            "1",
            "--k",
            "2",
            "--k-prime",
            "3",
            "--cap",
            "4",
        ],
        0,
    );
    assert_eq!(
        none["report"]["outcomes"][0]["status"],
        "premise not satisfied, no claim"
    );
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = ["lcan", "--sig", "1,1;1,1", "--kappa", "1,1;2,2"];
    let mut with_out = args.to_vec();
    with_out.extend(["--output", path.to_str().unwrap()]);
    assert_eq!(thetakit(&with_out).status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, thetakit(&args).stdout);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["nope"],
        vec!["lcan", "--sig", "2,x", "--kappa", "1,1,1,1"],
        vec!["lcan", "--sig", "2,2", "--kappa", "1,2,1,1"],
        vec!["lcan", "--sig", "2,2", "--kappa", "1,1,1"],
        vec![
            "restrict", "--sig", "2,2", "--part", "1,1/1,0", "--lambda", "1,0,1,0",
        ],
        vec!["family", "--n", "2", "--k", "1"],
        vec!["lcan", "--sig", "1,1", "--kappa", "1,1", "--format", "csv"],
        vec![
            "congruence",
            "--p",
            "4",
            "--sig",
            "1,1",
            "--kappa",
            "1,1",
            "--kappa-prime",
            "1,1",
        ],
    ] {
        let out = thetakit(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    assert_eq!(thetakit(&["--help"]).status.code(), Some(0));
}
