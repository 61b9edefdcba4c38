use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use qrd::ilp::parse_lp;
use qrd::labeling::verify;
use qrd::{Graph, Labeling};
use serde_json::Value;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs `qrd` from the crate root so fixture paths stay relative.
fn qrd(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_qrd"))
        .args(args)
        .current_dir(manifest_dir())
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = if stdout.trim().is_empty() { Value::Null } else { serde_json::from_str(&stdout).unwrap() };
    (code, report)
}

/// Drops timing fields and reduces output paths to file names.
fn normalize(mut v: Value) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(map) => {
                map.remove("timings");
                map.remove("elapsed_ms");
                map.values_mut().for_each(strip);
            }
            Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    if let Some(outs) = v.get_mut("outputs").and_then(Value::as_array_mut) {
        for o in outs {
            let name = Path::new(o["path"].as_str().unwrap()).file_name().unwrap().to_string_lossy().into_owned();
            o["path"] = Value::String(name);
        }
    }
    v
}

/// Compares against `tests/golden/NAME.json`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str], expected_code: i32) -> Value {
    let (code, report) = qrd(args);
    assert_eq!(code, expected_code, "{name}: {report:#}");
    let got = normalize(report.clone());
    let path = manifest_dir().join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
    }
    let want: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(got, want, "{name} drifted from its golden report");
    report
}

fn tmp(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn golden_verify_rejects_p2_four_zero() {
    let r = golden("verify_p2_bad", &["verify", "-g", "tests/fixtures/p2.graph", "-l", "tests/fixtures/p2_bad.labels"], 1);
    assert_eq!(r["result"]["violations"].as_array().unwrap().len(), 1);
    assert_eq!(r["result"]["weight"], 4);
}

#[test]
fn golden_solve_c6_brute() {
    let r = golden("solve_c6_brute", &["solve", "-g", "tests/fixtures/c6.graph", "--method", "brute"], 0);
    assert_eq!(r["result"]["report"]["optimum"], 10);
    assert_eq!(r["result"]["report"]["status"], "optimal");
}

#[test]
fn golden_solve_p2() {
    let r = golden("solve_p2", &["solve", "-g", "tests/fixtures/p2.graph"], 0);
    assert_eq!(r["result"]["report"]["optimum"], 5);
}

#[test]
fn golden_solve_h_of_k3() {
    let r = golden("solve_h_k3", &["solve", "-g", "tests/fixtures/h_k3.graph", "--method", "bnb"], 0);
    assert_eq!(r["result"]["report"]["optimum"], 13);
}

#[test]
fn golden_ilp_c4() {
    let r = golden("ilp_c4", &["ilp", "-g", "tests/fixtures/c4.graph"], 0);
    assert_eq!(r["result"]["variables"], 24);
    assert_eq!(r["result"]["constraints"], 8);
    let model = parse_lp(r["result"]["lp"].as_str().unwrap()).unwrap();
    assert_eq!((model.num_vars(), model.num_rows()), (24, 8));
}

#[test]
fn golden_family_f_defaults() {
    let r = golden("family_f_t2", &["family", "f", "--t", "2"], 0);
    assert_eq!(r["result"]["n"], 7);
    assert_eq!(r["result"]["witness_weight"], 13);
    assert_eq!(r["result"]["witness_valid"], true);
}

#[test]
fn golden_classify_p2() {
    let r = golden("classify_p2", &["classify", "-g", "tests/fixtures/p2.graph"], 0);
    assert_eq!(r["result"]["threshold"]["gamma4r"], 5);
    assert_eq!(r["result"]["eds"]["lower"], 5);
}

#[test]
fn golden_gen_gnp_seeded() {
    golden("gen_gnp_seed7", &["gen", "gnp", "8", "--p", "0.4", "--seed", "7"], 0);
}

#[test]
fn golden_dom_and_approx_c6() {
    let r = golden("dom_c6", &["dom", "-g", "tests/fixtures/c6.graph"], 0);
    assert_eq!(r["result"]["gamma"], 2);
    let r = golden("approx_c6", &["approx", "-g", "tests/fixtures/c6.graph", "--optimum"], 0);
    assert_eq!(r["result"]["valid"], true);
    assert_eq!(r["result"]["within_bound"], true);
}

#[test]
fn reports_are_deterministic() {
    let args = ["solve", "-g", "tests/fixtures/h_k3.graph"];
    assert_eq!(normalize(qrd(&args).1), normalize(qrd(&args).1));
}

#[test]
fn reduce_split_witness_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = tmp(&dir, "split");
    let (code, r) = qrd(&["reduce", "--gadget", "split", "--etc", "tests/fixtures/r1.json", "--witness", "-o", &prefix]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["n"], 4);
    assert_eq!(r["result"]["witness_weight"], 5);
    assert_eq!(r["outputs"].as_array().unwrap().len(), 3);
    let sidecar: Value = serde_json::from_str(&fs::read_to_string(format!("{prefix}.json")).unwrap()).unwrap();
    assert_eq!(sidecar["threshold"], 5);
    assert_eq!(sidecar["roles"]["C_0"], 0);

    let g = Graph::parse(&fs::read_to_string(format!("{prefix}.graph")).unwrap()).unwrap();
    let f = Labeling::parse(&fs::read_to_string(format!("{prefix}.labels")).unwrap(), Some(g.n())).unwrap();
    assert!(verify(&g, &f).unwrap().valid);
    let (code, r) = qrd(&["verify", "-g", &format!("{prefix}.graph"), "-l", &format!("{prefix}.labels")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["weight"], 5);
}

#[test]
fn star_gadget_witness_verifies_at_19() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = tmp(&dir, "star");
    let (code, _) = qrd(&["reduce", "--gadget", "star", "--etc", "tests/fixtures/r1.json", "--witness", "-o", &prefix]);
    assert_eq!(code, 0);
    let (code, r) = qrd(&["verify", "-g", &format!("{prefix}.graph"), "-l", &format!("{prefix}.labels")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["weight"], 19);
}

#[test]
fn planar_gadget_records_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = tmp(&dir, "pl");
    let (code, r) = qrd(&["reduce", "--gadget", "planar", "--etc", "tests/fixtures/r2.json", "-o", &prefix]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["threshold"], Value::Null);
    assert_eq!(r["result"]["certificate_ok"], true);
    let (code, _) = qrd(&["reduce", "--gadget", "planar", "--etc", "tests/fixtures/r2.json", "--witness", "-o", &prefix]);
    assert_eq!(code, 4);
}

#[test]
fn unsolvable_instance_has_no_witness() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = tmp(&dir, "none");
    let (code, r) = qrd(&["reduce", "--gadget", "split", "--etc", "tests/fixtures/r1_empty.json", "--witness", "-o", &prefix]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["cover"], Value::Null);
    assert!(!Path::new(&format!("{prefix}.labels")).exists());
}

#[test]
fn comb_below_minimum_r_is_a_precondition_error() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = qrd(&["reduce", "--gadget", "comb", "--etc", "tests/fixtures/r1.json", "-o", &tmp(&dir, "c")]);
    assert_eq!(code, 4);
    assert!(r["error"]["message"].as_str().unwrap().contains("r ≥ 4"));
}

#[test]
fn input_errors_exit_2() {
    let (code, r) = qrd(&["verify", "-g", "tests/fixtures/missing.graph", "-l", "tests/fixtures/p2_bad.labels"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["code"], 2);
    let (code, _) = qrd(&["solve", "-g", "tests/fixtures/p2.graph", "--no-such-flag"]);
    assert_eq!(code, 2);
    let (code, _) = qrd(&["verify", "-g", "tests/fixtures/p2.graph", "-l", "tests/fixtures/c4.graph"]);
    assert_eq!(code, 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let (code, r) = qrd(&["solve", "-g", "tests/fixtures/h_k3.graph", "--node-limit", "1"]);
    assert_eq!(code, 3);
    assert_eq!(r["result"]["report"]["status"], "infeasible-budget");
    let (code, _) = qrd(&["solve", "-g", "tests/fixtures/h_k3.graph", "--method", "brute", "--cap", "3"]);
    assert_eq!(code, 3);
}

#[test]
fn ilp_writes_lp_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = tmp(&dir, "c4.lp");
    let (code, r) = qrd(&["ilp", "-g", "tests/fixtures/c4.graph", "-o", &path, "--as-printed"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["uniqueness"], "at-most-one");
    let model = parse_lp(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((model.num_vars(), model.num_rows()), (24, 8));
}

#[test]
fn family_fprime_and_ds_approx() {
    let (code, r) = qrd(&["family", "fprime", "--r", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["witness_weight"], 10);
    let (code, _) = qrd(&["family", "fprime", "--r", "4"]);
    assert_eq!(code, 4);
    let (code, r) = qrd(&["dom", "-g", "tests/fixtures/c6.graph", "--k", "2", "--backend", "exact"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["dominating"], true);
    assert_eq!(r["result"]["size"], 2);
}

#[test]
fn gen_is_seed_reproducible() {
    let a = qrd(&["gen", "connected", "9", "--p", "0.3", "--seed", "11"]).1;
    let b = qrd(&["gen", "connected", "9", "--p", "0.3", "--seed", "11"]).1;
    assert_eq!(a["result"]["graph"], b["result"]["graph"]);
    let g = Graph::parse(a["result"]["graph"].as_str().unwrap()).unwrap();
    assert!(g.is_connected());
}
