use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["oresmooth"];
    argv.extend_from_slice(args);
    let code = oresmooth_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap().trim_end().to_string(),
        String::from_utf8(err).unwrap(),
    )
}

fn stdout_of(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn json_of(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, _) = run(&full);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn normalize_examples() {
    assert_eq!(stdout_of(&["--q", "2", "normalize", "y*x"]), "2*x*y");
    assert_eq!(stdout_of(&["normalize", "x*y - x*y"]), "0");
    // printed in ascending y-degree, then ascending x-degree
    assert_eq!(
        stdout_of(&["--base", "laurent", "--sign", "-", "--q", "2", "--p", "x - 2*x^-1", "normalize", "y*x"]),
        "-2*x^-1 + x + 2*x^-1*y"
    );
    assert_eq!(stdout_of(&["normalize", "-x + 3"]), "3 - x");
}

#[test]
fn normalize_json_terms() {
    let (code, v) = json_of(&["--q", "2", "normalize", "y*x + 1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["text"], "1/2 + 2*x*y");
    assert_eq!(v["terms"][0]["coeff"], "1/2");
    assert_eq!(v["terms"][1]["k"], 1);
    assert_eq!(v["terms"][1]["l"], 1);
    assert_eq!(v["terms"][1]["coeff"], "2");
}

#[test]
fn d_examples() {
    assert_eq!(stdout_of(&["d", "x^2"]), "dx*(2*x)");
    assert_eq!(stdout_of(&["d", "1"]), "0");
    // ∂_y(x y) = ν_y(x) = x - r
    assert_eq!(
        stdout_of(&["--q", "1", "--r", "1", "--p", "1", "d", "x*y"]),
        "dx*(y) + dy*(-1 + x)"
    );
}

#[test]
fn wedge_apply_nu_divergence() {
    assert_eq!(stdout_of(&["--q", "3", "wedge", "dy", "dx"]), "dx*dy*(-3)");
    assert_eq!(stdout_of(&["--q", "3", "wedge", "dx", "dx"]), "0");
    assert_eq!(
        stdout_of(&["--base", "laurent", "--sign", "-", "--q", "2", "--p", "x - 2*x^-1", "wedge", "dx", "dy"]),
        "dy*dx*(2*x^-2)"
    );
    assert_eq!(stdout_of(&["--p", "x^3", "apply-nu", "omega", "y"]), "3*x^2 + y");
    assert_eq!(stdout_of(&["--p", "x^3", "apply-nu", "x", "y"]), "3*x^2 + y");
    assert_eq!(stdout_of(&["--p", "x^3", "apply-nu", "x-inv", "3*x^2 + y"]), "y");
    assert_eq!(stdout_of(&["divergence", "x", "y"]), "2");
    assert_eq!(stdout_of(&["divergence", "x^2*y"]), "2*x*y");
}

#[test]
fn check_examples_and_exit_codes() {
    let (code, v) = json_of(&["--q", "1", "--r", "1", "--p", "x", "check", "admissible"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "NotAdmissible");

    let (code, v) = json_of(&["--q", "3", "--r", "6", "--p", "5*x + 15", "check", "admissible"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "PolyC");
    assert_eq!(v["witness"], "5");

    let (code, v) = json_of(&["--q", "2", "--r", "1", "--p", "x + 1", "check", "dual-basis", "--bound", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["bound"], 6);

    let (code, _) = json_of(&["check", "hopf", "--family", "b", "--q", "2", "--n", "1"]);
    assert_eq!(code, 0);

    let (code, v) = json_of(&["--q", "1", "--r", "1", "--p", "x", "check", "kernel-d"]);
    assert_eq!(code, 1);
    assert!(v["counterexample"].as_str().unwrap().contains("not admissible"));

    assert_eq!(run(&["check", "hopf"]).0, 2);
    assert_eq!(run(&["check", "nonsense"]).0, 2);
    assert_eq!(run(&["--bound", "-1", "check", "kernel-d"]).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["normalize", "x +* y"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 4"), "{err}");
    let (code, _, err) = run(&["--q", "0", "normalize", "x"]);
    assert_eq!(code, 2);
    assert!(err.contains("q must be nonzero"));
    let (code, _, err) = run(&["--r", "1", "--p", "x", "d", "x"]);
    assert_eq!(code, 2);
    assert!(err.contains("admits no two-dimensional calculus"), "{err}");
    assert_eq!(run(&["normalize", "x^-1"]).0, 2);
    assert_eq!(run(&["wedge", "x", "dy"]).0, 2);
    assert_eq!(run(&[]).0, 2);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "--q", "1/2", "--p", "-x", "check", "divergence", "--bound", "3"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    // The pretty-printed text keeps that order.
    assert!(a.find("\"bound\"").unwrap() < a.find("\"check\"").unwrap());
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("oresmooth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("alg.json");
    std::fs::write(&path, r#"{"base":"laurent","sign":"-","q":"2","p":[[1,"1"],[-1,"-2"]]}"#)
        .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout_of(&["--config", p, "normalize", "y*x"]), "-2*x^-1 + x + 2*x^-1*y");
    // --q overrides the file, which makes p no longer admissible
    let (code, out, _) = run(&["--config", p, "--q", "3", "check", "admissible"]);
    assert_eq!(code, 1, "{out}");
    std::fs::write(&path, r#"{"q": "2", "unknown": 1}"#).unwrap();
    assert_eq!(run(&["--config", p, "normalize", "x"]).0, 2);
    assert_eq!(run(&["--config", "/nonexistent/cfg.json", "normalize", "x"]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes_and_stdin_config() {
    let bin = env!("CARGO_BIN_EXE_oresmooth");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["normalize", "x"]), Some(0));
    assert_eq!(status(&["--r", "1", "--p", "x", "check", "admissible"]), Some(1));
    assert_eq!(status(&["normalize", "("]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));

    let mut child = Command::new(bin)
        .args(["--config", "-", "check", "hopf", "--bound", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"family": "c", "n": 2}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("[PASS] hopf"));
}
