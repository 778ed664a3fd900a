//! End-to-end tests of the `pa-stat` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

const ABS: &str = r#"{"kind":"mc","dim":1,"tree":{"max":[{"leaf":{"x":[1]}},{"leaf":{"x":[-1]}}]}}"#;
const SUM_RULE: &str =
    r#"{"kind":"dc","dim":1,"h":{"max":[{"leaf":{"x":[2]}},{"leaf":{"x":[0]}}]},"g":{"max":[{"leaf":{"x":[1]}},{"leaf":{"x":[0]}}]}}"#;

fn pa_stat(args: &[&str], stdin: &str) -> (i32, String, String) {
    pa_stat_env(args, stdin, None)
}

fn pa_stat_env(args: &[&str], stdin: &str, caps: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pa-stat"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    match caps {
        Some(c) => cmd.env("PASTAT_CAPS", c),
        None => cmd.env_remove("PASTAT_CAPS"),
    };
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(out: &str) -> Value {
    serde_json::from_str(out.trim()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pa-stat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn eval_dirderiv_and_subdiff() {
    assert_eq!(pa_stat(&["eval", "--point", "-3/2"], ABS), (0, "3/2\n".into(), String::new()));
    assert_eq!(pa_stat(&["dirderiv", "--fn", "-", "--point", "0", "--dir", "-1"], ABS).1, "1\n");
    let (code, out, _) = pa_stat(&["--json", "subdiff", "--point", "0"], SUM_RULE);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["vertices"], serde_json::json!([["0"], ["1"]]));
    let (_, out, _) = pa_stat(&["--json", "subdiff", "--point", "0", "--notion", "dc"], SUM_RULE);
    assert_eq!(json(&out)["vertices"], serde_json::json!([["-1"], ["2"]]));
}

#[test]
fn robust_test_output() {
    let (code, out, _) = pa_stat(
        &["--json", "test-robust", "--point", "0.05", "--eps", "0", "--delta", "1/5", "--oracle", "clarke-brute"],
        ABS,
    );
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "true");
    assert_eq!(v["certificate"], serde_json::json!(["0"]));
    let (code, out, _) = pa_stat(&["test-robust", "--point", "1", "--delta", "1/2"], ABS);
    assert_eq!(code, 0);
    assert!(out.starts_with("verdict: false"));
}

#[test]
fn refusals_and_caps_exit_3() {
    let (code, _, err) = pa_stat(&["test-robust", "--point", "0", "--eps", "1/2", "--delta", "1", "--oracle", "frechet-brute"], ABS);
    assert_eq!(code, 3, "{err}");
    let f = pa_stat(&["gen-3sat", "--vars", "3", "--clauses", "3"], "").1;
    let (code, _, err) = pa_stat_env(&["dist", "--point", "0"], &f, Some("brute=1"));
    assert_eq!(code, 3);
    assert!(err.contains("cap exceeded"));
    assert_eq!(pa_stat_env(&["eval", "--point", "0"], ABS, Some("brute=oops")).0, 2);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(pa_stat(&["eval", "--point", "1,2"], ABS).0, 2);
    assert_eq!(pa_stat(&["eval", "--point", "x"], ABS).0, 2);
    assert_eq!(pa_stat(&["eval", "--point", "0"], "not json").0, 2);
    assert_eq!(pa_stat(&["eval", "--fn", "/nonexistent/f.json", "--point", "0"], "").0, 2);
    assert_eq!(pa_stat(&["no-such-command"], "").0, 2);
    assert_eq!(pa_stat(&["--help"], "").0, 0);
}

#[test]
fn unsatisfiable_formula_has_distance_one_half() {
    let cnf = temp_file("unsat.cnf", "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
    let (code, f, _) = pa_stat(&["gen-3sat", "--cnf", cnf.to_str().unwrap(), "--form", "maxmin-clarke"], "");
    assert_eq!(code, 0);
    assert_eq!(pa_stat(&["dist", "--point", "0"], &f).1, "1/4\n");
    let sat = temp_file("sat.cnf", "p cnf 2 1\n1 -2 2 0\n");
    let f = pa_stat(&["gen-3sat", "--cnf", sat.to_str().unwrap()], "").1;
    let (_, out, _) = pa_stat(&["--json", "test-exact", "--point", "0"], &f);
    assert_eq!(json(&out)["stationary"], true);
}

#[test]
fn seeded_generators_are_reproducible() {
    let a = pa_stat(&["--seed", "5", "gen-parmax", "--n", "4", "--m", "3"], "").1;
    let b = pa_stat(&["--seed", "5", "gen-parmax", "--n", "4", "--m", "3"], "").1;
    assert_eq!(a, b);
    assert_eq!(json(&a)["kind"], "dc");
    let inst = temp_file("parmax.json", r#"{"n":2,"alpha":3,"ys":[[1,1],[1,-1]]}"#);
    let f = pa_stat(&["gen-parmax", "--instance", inst.to_str().unwrap()], "").1;
    let (_, out, _) = pa_stat(&["--json", "test-exact", "--notion", "frechet", "--point", "0"], &f);
    assert_eq!(json(&out)["stationary"], true);
}

#[test]
fn polytope_commands() {
    let a = temp_file("x.json", r#"{"vertices":[[0,0],[-1,-1],[1,-1]]}"#);
    let b = temp_file("y.json", r#"{"vertices":[[0,0],[0,"-1/2"]]}"#);
    let (code, out, _) = pa_stat(&["--json", "check-compat", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()], "");
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["compatible"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
    let z1 = temp_file("z1.json", r#"{"zonotope":{"center":[0,0],"generators":[[1,0]]}}"#);
    let z2 = temp_file("z2.json", r#"{"zonotope":{"center":[1,1],"generators":[[0,1]]}}"#);
    let (_, out, _) = pa_stat(&["--json", "check-transversal", "--a", z1.to_str().unwrap(), "--b", z2.to_str().unwrap()], "");
    assert_eq!(json(&out)["transversal"], true);
    let (_, out, _) = pa_stat(&["--json", "check-transversal", "--point", "0"], SUM_RULE);
    assert_eq!(json(&out)["transversal"], false);
    let (_, out, _) = pa_stat(&["--json", "delta-sep", "--point", "1"], ABS);
    assert_eq!(json(&out)["r"], "1");
}

#[test]
fn subgradient_json_lines() {
    let (code, out, _) = pa_stat(
        &["--json", "run-sgm", "--point", "1", "--step", "const:1/4", "--eps", "0", "--delta", "1/10", "--max-iters", "16"],
        ABS,
    );
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4]["check"], "true");
    assert_eq!(lines[4]["certificate"], serde_json::json!(["0"]));
}

#[test]
fn qualification_command() {
    let data = temp_file(
        "data.json",
        r#"{"points":[[0,-2],[0,-1],[1,0],[0,1]],"labels":[1,1,1,1]}"#,
    );
    let params = temp_file("params.json", r#"{"units":[{"w":[1,1,-1],"u":1}],"p":[1,1,1,-1]}"#);
    let (code, out, err) = pa_stat(
        &["--json", "check-qualification", "--data", data.to_str().unwrap(), "--model", "relu2", "--params", params.to_str().unwrap()],
        "",
    );
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["surjectivity"], true);
    assert_eq!(v["general_position"], false);
    let (code, out, _) = pa_stat(
        &["check-qualification", "--data", data.to_str().unwrap(), "--model", "svm", "--rho", "1", "--point", "1,0,0"],
        "",
    );
    assert_eq!(code, 0);
    assert!(out.contains("span condition: yes"));
}
