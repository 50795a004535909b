use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_covalg")).args(args).output().expect("spawn covalg");
    let report: Value = serde_json::from_slice(&out.stdout).expect("report is JSON");
    (out.status.code().expect("exit code"), report)
}

fn run_file(args: &[&str], file: &str) -> (i32, Value) {
    let path = data(file);
    let mut all = args.to_vec();
    all.push(path.to_str().unwrap());
    run(&all)
}

fn verdict<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["name"] == name)
        .unwrap_or_else(|| panic!("no verdict {name} in {report}"))
}

#[test]
fn lattice_counts() {
    for (n, count) in [(1, 2), (2, 5), (3, 19), (4, 167)] {
        let (code, r) = run(&["lattice", "enum", "-N", &n.to_string()]);
        assert_eq!(code, 0);
        assert_eq!(verdict(&r, "antichain-enumeration")["detail"]["count"], count);
        assert_eq!(r["output"].as_array().unwrap().len(), count);
    }
}

#[test]
fn topology_matches_lattice() {
    let (code, r) = run(&["topology", "enum", "-N", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["output"].as_array().unwrap().len(), 19);
}

#[test]
fn cap_is_an_input_error() {
    let (code, r) = run(&["lattice", "enum", "-N", "7"]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("cap"));
    let (code, _) = run(&["--cap", "2", "lattice", "enum", "-N", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn covering_check_verdicts() {
    assert_eq!(run_file(&["covering", "check"], "fun3.json").0, 0);
    let (code, r) = run_file(&["covering", "check"], "three_lines.json");
    assert_eq!(code, 1);
    let d = verdict(&r, "ideal-lattice-distributive");
    assert_eq!(d["pass"], false);
    assert_eq!(d["detail"]["verdict"], "witness");
}

#[test]
fn crt_glue_succeeds() {
    for f in ["crt_fun3.json", "crt_fun4.json"] {
        let (code, r) = run_file(&["crt", "glue"], f);
        assert_eq!(code, 0, "{r}");
        assert_eq!(verdict(&r, "crt-unique")["pass"], true);
    }
}

#[test]
fn incompatible_local_data_fails() {
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(data("crt_fun3.json")).unwrap()).unwrap();
    // perturb one local section so the pieces disagree on the overlap
    let first = &mut file["local"][0][1];
    let v: i64 = first.as_str().unwrap().parse().unwrap();
    *first = Value::String(((v + 1) % 5).to_string());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, file.to_string()).unwrap();
    let (code, r) = run(&["crt", "glue", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{r}");
    assert_eq!(verdict(&r, "crt-glue")["pass"], false);
}

#[test]
fn sheaf_commands() {
    assert_eq!(run_file(&["sheaf", "roundtrip"], "fun3.json").0, 0);
    assert_eq!(run_file(&["sheaf", "verify", "--all-covers"], "sheaf_fun3.json").0, 0);
    let (code, r) = run_file(&["sheaf", "build"], "fun4.json");
    assert_eq!(code, 0);
    assert_eq!(r["output"]["N"], 3);
}

#[test]
fn sheaf_build_output_verifies() {
    let (_, r) = run_file(&["sheaf", "build"], "fun3.json");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sheaf.json");
    std::fs::write(&path, r["output"].to_string()).unwrap();
    let (code, _) = run(&["sheaf", "verify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn principality_verdicts() {
    for f in ["free_z2.json", "free_z3.json", "root_of_unity.json"] {
        let (code, r) = run_file(&["hopf", "principal"], f);
        assert_eq!(code, 0, "{f}: {r}");
        assert_eq!(verdict(&r, "canonical-map-inverse")["pass"], true);
    }
    for f in ["fixedpoint.json", "nonfree_z3.json", "trivial_coaction.json"] {
        let (code, r) = run_file(&["hopf", "principal"], f);
        assert_eq!(code, 1, "{f}");
        let v = verdict(&r, "strong-connection-feasibility");
        assert_eq!(v["detail"]["result"], "infeasible");
        assert_eq!(v["detail"]["galois"], false);
    }
}

#[test]
fn hopf_verify_accepts_bundled_and_rejects_broken() {
    assert_eq!(run_file(&["hopf", "verify"], "hopf_z3_q.json").0, 0);
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(data("hopf_z2_gf5.json")).unwrap()).unwrap();
    file["counit"] = serde_json::json!([["1", "0"]]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, file.to_string()).unwrap();
    let (code, r) = run(&["hopf", "verify", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{r}");
}

#[test]
fn glue_and_piecewise() {
    let (code, r) = run_file(&["hopf", "glue"], "glue_four_orbits.json");
    assert_eq!(code, 0, "{r}");
    assert_eq!(verdict(&r, "glued-connection-perturbed")["detail"]["alpha_perturbed"], true);
    let (code, r) = run_file(&["hopf", "piecewise"], "piecewise_free_z2.json");
    assert_eq!(code, 0, "{r}");
    assert_eq!(verdict(&r, "principality-is-local")["pass"], true);
}

#[test]
fn field_flag_is_checked() {
    assert_eq!(run_file(&["--field", "gf5", "hopf", "principal"], "free_z2.json").0, 0);
    let (code, r) = run_file(&["--field", "q", "hopf", "principal"], "free_z2.json");
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("field"));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{ not json").unwrap();
    let (code, r) = run(&["covering", "check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut r: Value| {
        r.as_object_mut().unwrap().remove("timing_ms");
        r
    };
    for (args, file) in [(&["hopf", "piecewise"][..], "piecewise_z3_three.json"), (&["sheaf", "build"][..], "fun4.json")] {
        let (_, a) = run_file(args, file);
        let (_, b) = run_file(args, file);
        assert_eq!(strip(a), strip(b));
    }
}
