//! End-to-end tests of the binary: exit codes, value anchors, byte-level
//! determinism, and JSON schema conformance.

use std::path::Path;
use std::process::{Command, Output};

fn sphere_tc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphere-tc"))
        .args(args)
        .env_remove("TC_SPHERE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn load_schema(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file"))
        .expect("schema parses")
}

fn assert_valid(schema_name: &str, document: &serde_json::Value) {
    let schema = load_schema(schema_name);
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let violations: Vec<String> = match compiled.validate(document) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(
        violations.is_empty(),
        "{schema_name} violations: {violations:?}"
    );
}

#[test]
fn bounds_exact_cp2() {
    let output = sphere_tc(&["bounds", "CP(2); 1*eta+1*eps", "--r", "3"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("exact: 5"), "{text}");
}

#[test]
fn bounds_interval_rp3() {
    let output = sphere_tc(&["bounds", "RP(3); 2*eta+1*eps", "--r", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("lower: 2"), "{text}");
    assert!(text.contains("upper: 3"), "{text}");
    assert!(text.contains("undetermined"), "{text}");
}

#[test]
fn bounds_hopf_r4() {
    let output = sphere_tc(&["bounds", "CP(1); 1*eta", "--r", "4"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("exact: 3"));
}

#[test]
fn bounds_json_validates_against_schema() {
    for (spec, r) in [
        ("CP(2); 1*eta+1*eps", "3"),
        ("RP(3); 2*eta+1*eps", "2"),
        ("S(2); 3*eps", "2"),
    ] {
        let output = sphere_tc(&["bounds", spec, "--r", r, "--format", "json"]);
        assert!(output.status.success());
        let document: serde_json::Value =
            serde_json::from_str(&stdout(&output)).expect("json output");
        assert_valid("bound_report.schema.json", &document);
    }
}

#[test]
fn bounds_parse_error_names_grammar_and_exits_2() {
    let output = sphere_tc(&["bounds", "CP(2) 1*eta", "--r", "2"]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("eta"), "{err}");
    assert!(err.contains("CP(n)"), "{err}");
}

#[test]
fn bounds_rejects_r_below_2() {
    let output = sphere_tc(&["bounds", "CP(2); 1*eta+1*eps", "--r", "1"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn oracle_matches() {
    for (spec, r) in [
        ("CP(1); 1*eta+1*eps", "2"),
        ("pt; 2*eps", "3"),
        ("RP(3); 2*eta+1*eps", "2"),
    ] {
        let output = sphere_tc(&["oracle", spec, "--r", r]);
        assert!(output.status.success(), "oracle failed for {spec}");
        assert!(stdout(&output).contains("MATCH"));
    }
}

#[test]
fn oracle_needs_a_model() {
    let output = sphere_tc(&["oracle", "CP(1); 1*eta", "--r", "2"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn sweep_cp_family_row_values() {
    let output = sphere_tc(&[
        "sweep", "--family", "cp-eta-eps", "--n", "1..4", "--r", "2",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let exacts: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|line| line.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(exacts, vec!["2", "4", "4", "6"]);
}

#[test]
fn sweep_rp_intervals() {
    let output = sphere_tc(&[
        "sweep", "--family", "rp-l-eta-eps", "--n", "3", "--l", "2", "--r", "2..4",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(
        rows,
        vec![
            "rp_l_eta_eps,3,2,2,2,3,",
            "rp_l_eta_eps,3,2,3,3,4,",
            "rp_l_eta_eps,3,2,4,4,5,"
        ]
    );
}

#[test]
fn sweep_empty_range_is_empty_table() {
    let output = sphere_tc(&[
        "sweep", "--family", "cp-eta-eps", "--n", "4..1", "--r", "2",
    ]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), "family,n,l,r,lower,upper,exact\n");
}

#[test]
fn plan_great_circle_json() {
    let output = sphere_tc(&["plan", "--q", "2", "--points", "1,0;-1,0"]);
    assert!(output.status.success());
    let document: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("json");
    assert_eq!(document["piece_index"], 1);
    assert_eq!(document["antipodal"], serde_json::json!([2]));
    assert_eq!(document["paths"][0]["kind"], "great_circle");
    assert_valid("plan_result.schema.json", &document);
}

#[test]
fn plan_interpolation_json_validates() {
    let output = sphere_tc(&["plan", "--q", "4", "--points", "1,0,0,0;0,1,0,0;0,0,1,0"]);
    assert!(output.status.success());
    let document: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("json");
    assert_eq!(document["piece_index"], 0);
    assert_valid("plan_result.schema.json", &document);
}

#[test]
fn plan_malformed_points_exit_2() {
    let output = sphere_tc(&["plan", "--q", "2", "--points", "1,0;oops"]);
    assert_eq!(output.status.code(), Some(2));
    let output = sphere_tc(&["plan", "--q", "2", "--points", "1,0,0;0,1,0"]);
    assert_eq!(output.status.code(), Some(2));
    // odd q has no built-in section table
    let output = sphere_tc(&["plan", "--q", "3", "--points", "1,0,0;0,1,0"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn stats_histogram_bounds() {
    let output = sphere_tc(&[
        "stats", "--q", "4", "--r", "3", "--samples", "20000", "--seed", "7",
    ]);
    assert!(output.status.success());
    let document: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("json");
    let histogram = document["histogram"].as_array().unwrap();
    assert_eq!(histogram.len(), 3); // k + r = 0 + 3
    let total: u64 = histogram.iter().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 20000);
    // the max observed index stays below k + r - 1 = 2
    let max_index = document["max_index"].as_u64();
    assert!(max_index <= Some(2));
}

#[test]
fn stats_are_byte_deterministic() {
    let args = [
        "stats", "--q", "2", "--r", "2", "--samples", "30000", "--seed", "11",
    ];
    let first = sphere_tc(&args);
    let second = sphere_tc(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    // and independent of the worker count
    let capped = Command::new(env!("CARGO_BIN_EXE_sphere-tc"))
        .args(args)
        .env("TC_SPHERE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(first.stdout, capped.stdout);
}

#[test]
fn bounds_csv_lists_rules() {
    let output = sphere_tc(&["bounds", "CP(2); 1*eta+1*eps", "--r", "3", "--format", "csv"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(text.lines().next(), Some("id,direction,value,applicable"));
    assert!(text.contains("L_EULER_HEIGHT,lower,5,true"), "{text}");
    assert!(text.contains("U_SHARP,upper,,false"), "{text}");
    assert_eq!(text.lines().count(), 10); // header + nine rules
}

#[test]
fn sweep_text_table() {
    let output = sphere_tc(&[
        "sweep", "--family", "rp-l-eta-eps", "--n", "3", "--l", "2", "--r", "2",
        "--format", "text",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.lines().next().unwrap().starts_with("family"));
    assert!(text.contains("rp_l_eta_eps"), "{text}");
}

#[test]
fn bounds_output_is_byte_deterministic() {
    let args = ["bounds", "RP(5); 3*eta+1*eps", "--r", "3", "--format", "json"];
    let first = sphere_tc(&args);
    let second = sphere_tc(&args);
    assert_eq!(first.stdout, second.stdout);
}
