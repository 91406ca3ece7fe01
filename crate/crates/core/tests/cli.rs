use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gvkit(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gvkit"));
    cmd.args(args).env_remove("GVKIT_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is JSON")
}

fn fixture() -> String {
    format!(
        "{}/tests/fixtures/synthesized_rank2.json",
        env!("CARGO_MANIFEST_DIR")
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_genus_one_passes() {
    let o = gvkit(&["check", "--genus", "1", "--qdeg", "20"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let rep = stdout_json(&o);
    assert_eq!(rep["passed"], Value::Bool(true));
    let support = rep["support"].as_array().unwrap();
    assert_eq!(support.len(), 20);
    for (i, e) in support.iter().enumerate() {
        assert_eq!(e["d"], (i + 1) as u64);
        assert_eq!(e["h"], 1);
        assert_eq!(e["value"], "1");
    }
}

#[test]
fn elem_q_backend_has_integer_coefficients() {
    let o = gvkit(
        &["elem", "--genus", "2", "--qdeg", "3", "--backend", "q"],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let doc = stdout_json(&o);
    let expected = gvkit::elem_series::q_coefficients(2, 3).unwrap();
    let mut seen = 0;
    for term in doc["terms"].as_array().unwrap() {
        let d = term["d"].as_u64().unwrap() as u32;
        for (n, c) in term["q"].as_object().unwrap() {
            let c = c.as_str().unwrap();
            assert!(!c.contains('/'), "{c}");
            assert_eq!(expected[&(n.parse().unwrap(), d)].to_string(), c);
            seen += 1;
        }
    }
    assert_eq!(seen, expected.len());
}

#[test]
fn solve_fixture_agrees() {
    let o = gvkit(&["solve", "--input", &fixture()], &[]);
    assert_eq!(o.status.code(), Some(0));
    let rep = stdout_json(&o);
    assert_eq!(rep["cross_check"], "agree");
    assert_eq!(rep["integral"], true);
    assert!(rep["violations"].as_array().unwrap().is_empty());
}

#[test]
fn non_integral_solution_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "half.json",
        r#"{"rank":1,"area_weights":["1"],"energy":"1","genus_max":1,
            "terms":[{"class":[1],"genus":1,"coeff":"1/2"}]}"#,
    );
    let o = gvkit(&["solve", "--input", &input], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["integral"], false);
    let o = gvkit(&["bps", "--invert", "--input", &input], &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two_with_error_object() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("garbage.json", "{not json", "parse"),
        (
            "schema.json",
            r#"{"rank":1,"area_weights":["1"],"energy":"2","genus_max":0,"terms":[],"extra":1}"#,
            "parse",
        ),
        (
            "window.json",
            r#"{"rank":1,"area_weights":["1"],"energy":"2","genus_max":0,"terms":[{"class":[3],"genus":0,"coeff":"1"}]}"#,
            "truncation_unsound",
        ),
    ];
    for (name, text, kind) in cases {
        let input = write(dir.path(), name, text);
        let o = gvkit(&["solve", "--input", &input], &[]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(o.stdout.is_empty());
        let err = stderr_json(&o);
        assert_eq!(err["error"], kind, "{name}: {err}");
        assert!(err["message"].is_string());
    }
    let o = gvkit(&["solve", "--input", "/nonexistent/file.json"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = gvkit(&["check", "--genus", "x"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "usage");
    let o = gvkit(
        &["elem", "--genus", "0", "--qdeg", "2", "--backend", "q"],
        &[],
    );
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "unsupported_backend");
    let o = gvkit(
        &["elem", "--genus", "1", "--qdeg", "2"],
        &[("GVKIT_THREADS", "many")],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bps_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("n.json");
    let gw = dir.path().join("gw.json");
    let o = gvkit(
        &[
            "bps",
            "--invert",
            "--input",
            &fixture(),
            "--output",
            table.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["integral"], true);
    let o = gvkit(
        &[
            "bps",
            "--input",
            table.to_str().unwrap(),
            "--output",
            gw.to_str().unwrap(),
            "--quiet",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&gw).unwrap(),
        std::fs::read_to_string(fixture()).unwrap()
    );
}

#[test]
fn runs_are_deterministic_across_thread_counts() {
    let args = ["elem", "--genus", "3", "--qdeg", "8", "--kind", "gw"];
    let a = gvkit(&args, &[]);
    let b = gvkit(&args, &[("GVKIT_THREADS", "3")]);
    let c = gvkit(&args, &[("GVKIT_THREADS", "0")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let t = gvkit(
        &[
            "elem",
            "--genus",
            "0",
            "--qdeg",
            "3",
            "--backend",
            "t",
            "--t-order",
            "6",
        ],
        &[],
    );
    assert_eq!(t.status.code(), Some(0));
    assert_eq!(stdout_json(&t)["t_order"], 6);
}

#[test]
fn fano_am_and_dim_commands() {
    let dir = tempfile::tempdir().unwrap();
    let fano = write(
        dir.path(),
        "fano.json",
        r#"{"rank":1,"area_weights":["1"],"energy":"1","genus_max":1,"chern":[3],
            "terms":[{"class":[1],"genus":0,"coeff":"1"},{"class":[1],"genus":1,"coeff":"-1/24"}]}"#,
    );
    let o = gvkit(&["fano", "--input", &fano], &[]);
    assert_eq!(o.status.code(), Some(0));
    let doc = stdout_json(&o);
    assert_eq!(doc["terms"].as_array().unwrap().len(), 1);
    assert_eq!(doc["terms"][0]["coeff"], "1");

    let am = write(
        dir.path(),
        "am.json",
        r#"{"rank":1,"area_weights":["1"],"energy":"2","genus_max":0,
            "terms":[{"class":[1],"genus":0,"coeff":"1"},{"class":[2],"genus":0,"coeff":"1"}]}"#,
    );
    let o = gvkit(&["am", "--input", &am, "--insertions", "3"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let doc = stdout_json(&o);
    assert_eq!(doc["terms"].as_array().unwrap().len(), 1);

    let o = gvkit(&["dim", "--c1", "0", "--genus", "1"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["expected_dimension"], 0);
    let o = gvkit(&["dim", "--c1", "-1", "--insertions", "2,4"], &[]);
    assert_eq!(o.status.code(), Some(0));
}
