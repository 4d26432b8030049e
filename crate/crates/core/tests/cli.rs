use std::path::Path;
use std::process::{Command, Output};

fn colorful(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorful"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.json", "b.json"] {
        let out = colorful(&["generate", "--kind", "random", "--dim", "3", "--seed", "7", "-o", name], dir.path());
        assert_eq!(code(&out), 0);
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn solve_then_check_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&colorful(&["generate", "--kind", "tube", "--dim", "4", "--seed", "1", "-o", "i.json"], p)), 0);
    for (algo, rule, backend) in [("simplex", "dantzig", "exact"), ("simplex", "bland", "float64"), ("classic", "dantzig", "exact")] {
        let out = colorful(&["solve", "--algo", algo, "--rule", rule, "--backend", backend, "i.json", "-o", "s.json"], p);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let check = colorful(&["check", "s.json"], p);
        assert_eq!(code(&check), 0);
        assert!(String::from_utf8_lossy(&check.stdout).starts_with("1/1 records verified"));
    }
}

#[test]
fn check_rejects_tampered_weights() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    colorful(&["generate", "--kind", "random", "--dim", "3", "-o", "i.json"], p);
    colorful(&["solve", "i.json", "-o", "s.json"], p);
    let mut record: serde_json::Value = serde_json::from_slice(&std::fs::read(p.join("s.json")).unwrap()).unwrap();
    record["weights"][0] = "0".into();
    std::fs::write(p.join("t.json"), record.to_string()).unwrap();
    assert_eq!(code(&colorful(&["check", "t.json"], p)), 2);
}

#[test]
fn nash_on_matching_pennies() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("g.json"), r#"{"A":[["1","-1"],["-1","1"]],"B":[["-1","1"],["1","-1"]]}"#).unwrap();
    let out = colorful(&["--json", "nash", "g.json"], p);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["y"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(v["z"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(v["verified"], true);
}

#[test]
fn enumerate_decide_and_facs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    colorful(&["generate", "--kind", "middensity", "--dim", "3", "--seed", "2", "-o", "i.json"], p);
    let out = colorful(&["--json", "enumerate", "i.json"], p);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["census"]["parity"], "even");
    assert!(v["census"]["count"].as_u64().unwrap() >= 1);

    let out = colorful(&["--json", "decide", "i.json"], p);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["answer"], true);

    std::fs::write(
        p.join("f.json"),
        r#"{"dimension":1,"colors":[[["1"],["-1"]],[["2"],["-3"]]],"given":[0,1]}"#,
    )
    .unwrap();
    let out = colorful(&["--json", "facs", "f.json"], p);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["selection"], serde_json::json!([1, 0]));
    assert_eq!(v["oracle_calls"], 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("bad.json"), "{not json").unwrap();
    assert_eq!(code(&colorful(&["solve", "bad.json"], p)), 1);
    assert_eq!(code(&colorful(&["check", "missing.json"], p)), 1);

    colorful(&["generate", "--kind", "random", "--dim", "3", "-o", "i.json"], p);
    let out = Command::new(env!("CARGO_BIN_EXE_colorful"))
        .args(["enumerate", "i.json"])
        .current_dir(p)
        .env("COLORFUL_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("plan.json"), r#"{"kinds":["random"],"dimensions":[3],"instances":3}"#).unwrap();
    let out = colorful(&["--json", "bench", "--plan", "plan.json", "-o", "out.csv"], p);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows[0]["failures"], 0);
    let csv = std::fs::read_to_string(p.join("out.csv")).unwrap();
    assert!(csv.starts_with("generator,dimension,instances,avg_time_ms,avg_pivots,failures\nrandom,3,3,"));
}
