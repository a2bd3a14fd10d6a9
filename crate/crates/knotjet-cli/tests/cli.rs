use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn knotjet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotjet"))
        .args(args)
        .env_remove("KNOTJET_DIGITS")
        .output()
        .expect("binary runs")
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn rat(v: &Value) -> (String, String) {
    (
        v["num"].as_str().unwrap().to_string(),
        v["den"].as_str().unwrap().to_string(),
    )
}

fn pair(n: &str, d: &str) -> (String, String) {
    (n.to_string(), d.to_string())
}

#[test]
fn l2r_jet_two_at_the_complete_point() {
    let out = knotjet(&["jets", "L2R", "--chi", "2", "--eval", "w=1"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(rat(&d["result"]["sigma_at_w"]), pair("-7", "1"));
    let j2 = &d["result"]["jets"][1];
    assert_eq!(j2["chi"], 2);
    assert_eq!(rat(&j2["value"]["coeff"]), pair("1559", "128"));
    assert_eq!(rat(&j2["value"]["sigma"]), pair("-7", "1"));
    assert_eq!(j2["value"]["half_exp"], -6);
    assert_eq!(d["manifest"]["command"], "jets");
    assert_eq!(d["manifest"]["exit_status"], 0);
}

#[test]
fn non_palindromic_curve_file_is_a_class_violation() {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    // b² − 4ac = X⁴ + 2X³ + X² − 4X − 4 is not palindromic
    write!(
        f,
        r#"{{"name": "skew", "a": [1], "b": [0, 1, 1], "c": [1, 1]}}"#
    )
    .unwrap();
    let out = knotjet(&["curve", "info", f.path().to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("class violation"));
    assert_eq!(doc(&out)["manifest"]["exit_status"], 3);
}

#[test]
fn malformed_and_unknown_references_are_usage_errors() {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    write!(f, "{{ not json").unwrap();
    assert_eq!(
        knotjet(&["curve", "info", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        knotjet(&["curve", "info", "no_such_knot"]).status.code(),
        Some(2)
    );
    assert_eq!(knotjet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        knotjet(&["jets", "4_1", "--eval", "w=x"]).status.code(),
        Some(2)
    );
}

#[test]
fn curve_info_reports_model_and_cusp() {
    let d = doc(&knotjet(&["curve", "info", "4_1"]));
    let r = &d["result"];
    assert_eq!(r["label"], "4_1");
    assert_eq!(rat(&r["sigma_at_one"]), pair("-3", "1"));
    assert_eq!(r["cusp"]["field_disc"], "-3");
    assert_eq!(r["model"]["S"].as_array().unwrap().len(), 5);
    assert_eq!(r["ramification"]["points"], 4);
}

#[test]
fn theta_for_an_a_curve_and_an_elliptic_label() {
    let d = doc(&knotjet(&["theta", "4_1"]));
    let col: Vec<_> = d["result"]["serre"]["column"]
        .as_array()
        .unwrap()
        .iter()
        .map(rat)
        .collect();
    assert_eq!(col[1], pair("7", "12"));
    assert_eq!(col[4], pair("-28285", "6912"));
    assert_eq!(d["result"]["field"]["disc"], "-15");
    let out = knotjet(&["theta", "43A1", "--depth", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn amplitudes_and_kashaev() {
    let d = doc(&knotjet(&["amplitudes", "4_1", "--level", "1"]));
    let rows = d["result"]["amplitudes"].as_array().unwrap();
    let g300 = rows
        .iter()
        .find(|a| a["n"] == 3 && a["h"] == 0 && a["d"] == 0)
        .unwrap();
    let num: Vec<_> = g300["num"].as_array().unwrap().iter().map(rat).collect();
    assert_eq!(num, vec![pair("-7", "6"), pair("2", "1"), pair("-2", "1")]);
    let d = doc(&knotjet(&["kashaev", "4_1"]));
    let c: Vec<_> = d["result"]["eps_coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(rat)
        .collect();
    assert_eq!(
        c,
        vec![pair("-11", "12"), pair("2", "1"), pair("-1081", "90")]
    );
}

#[test]
fn verify_passes_with_errata_and_fails_strict() {
    let out = knotjet(&["verify", "4_1"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    let statuses: Vec<_> = d["result"]["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap().to_string())
        .collect();
    assert!(
        statuses.iter().all(|s| s == "PASS" || s == "ERRATUM"),
        "{statuses:?}"
    );
    assert!(statuses.iter().any(|s| s == "ERRATUM"));
    assert_eq!(
        knotjet(&["verify", "4_1", "--strict"]).status.code(),
        Some(4)
    );
}

#[test]
fn volume_of_the_figure_eight() {
    let d = doc(&knotjet(&["volume", "4_1", "--u", "i*pi"]));
    let h = d["result"]["half_volume"].as_f64().unwrap();
    assert!((h - 1.014_941_606_409_653_6).abs() < 1e-9);
    assert_eq!(d["manifest"]["numeric"]["digits"], 16);
    let out = knotjet(&["volume", "4_1", "--u", "i*pi", "--digits", "30"]);
    assert_eq!(out.status.code(), Some(2));
    // starting on a branchpoint is fine, passing through one is not
    let out = knotjet(&[
        "volume", "4_1", "--from", "0.3i", "--u", "2i", "--sheet", "plus",
    ]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let run = || {
        let mut d = doc(&knotjet(&[
            "--format", "compact", "jets", "4_1", "--chi", "3", "--eval", "w=1",
        ]));
        d["manifest"]["timing_ms"] = Value::Null;
        serde_json::to_string(&d).unwrap()
    };
    assert_eq!(run(), run());
}
