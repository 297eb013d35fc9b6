use std::process::{Command, Output};

fn critvals(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critvals"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn main_table_json() {
    let o = critvals(&["tables", "main", "--format", "json"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = doc["tables"]["main"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    let row = rows.iter().find(|r| r["s"] == -4).unwrap();
    assert_eq!(row["factored_text"], "2^24·392033/(3^5·5^3·7·17·19)");
    assert_eq!(row["pi_half"], 36);
    assert_eq!(row["pi_power"], 18);
    assert_eq!(doc["metadata"]["convention"], "tabulated");
}

#[test]
fn output_is_deterministic() {
    let a = critvals(&["tables", "coeffs-a", "--format", "csv"]);
    let b = critvals(&["tables", "coeffs-a", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("table,s,entry,num,den"));
}

#[test]
fn verify_coefficient_table_passes() {
    let o = critvals(&["verify", "--table", "coeffs-k"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 mismatches"));
}

#[test]
fn verify_reports_printed_sign_slip() {
    let o = critvals(&["verify", "--table", "g20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("a(5)"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--table", "nope"][..],
        &["tables", "main", "--format", "xml"],
        &["verify", "--tolerance", "-1"],
        &["norms", "--l", "12"],
        &["theta", "--gram", "1,2"],
        &["theta", "--gram", "2,0,0;0,2,0;0,0,1"],
    ] {
        let o = critvals(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn theta_identity_target() {
    let o = critvals(&["theta", "--gram", "2,0,0;0,2,0;0,0,2"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "normalized 164"));

    let h = critvals(&["theta", "--gram", "1,0,0;0,1,0;0,0,1", "--halves", "--threads", "1"]);
    assert!(stdout(&h).lines().any(|l| l == "normalized 164"));
}

#[test]
fn theta_budget_exhaustion_is_an_error() {
    let o = critvals(&["theta", "--gram", "8,0,0;0,8,0;0,0,8", "--budget", "0.001"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn norms_match_printed_to_many_digits() {
    let o = critvals(&["norms", "--form", "g20", "--l", "14", "--format", "json"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = &doc["diagnostics"][0];
    let expected: f64 = d["expected"].as_str().unwrap().parse().unwrap();
    let actual: f64 = d["actual"].as_str().unwrap().parse().unwrap();
    assert!(((actual - expected) / expected).abs() < 1e-12);
}

#[test]
fn fe_diagnostics_have_no_mismatches() {
    let o = critvals(&["diag", "fe"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("fe g20 (0,1) tabulated"));
    assert!(out.contains("0 mismatches"));
}
