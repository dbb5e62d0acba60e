use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matdioph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let out = bin(args);
    assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let got = stdout(&out);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "{name} differs from golden file");
}

fn json(args: &[&str]) -> Value {
    let out = bin(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

const QUAD: [&str; 10] = ["--a", "1", "--b", "-3", "--c", "-1", "--m", "2", "--n", "2"];

fn with<'a>(cmd: &'a str, base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend_from_slice(base);
    v.extend_from_slice(extra);
    v
}

#[test]
fn golden_classify() {
    golden("classify_quadratic.json", &with("classify", &QUAD, &["--uv-limit", "3"]));
    golden("classify_fermat6.json", &["classify", "--lambda", "2", "--m", "6", "--n", "6"]);
    golden("classify_quartic.json", &["classify", "--lambda", "1", "--m", "4", "--n", "4"]);
    golden(
        "classify_general.json",
        &["classify", "--a", "1", "--b", "1", "--c", "-3", "--m", "2", "--n", "4"],
    );
    golden("classify_quadratic.txt", &with("classify", &QUAD, &["--uv-limit", "2", "--format", "text"]));
}

#[test]
fn golden_verify_pell_power() {
    golden(
        "verify_pell.json",
        &with("verify", &QUAD, &["--x", "[[1,2],[2,5]]", "--y", "[[1,1],[1,3]]"]),
    );
    golden("pell_d3.json", &["pell", "--d", "3"]);
    golden("pell_uv.json", &["pell", "--a", "1", "--b", "-5", "--c", "2", "--uv-limit", "4"]);
    golden("power.json", &["power", "--x", "[[1,1],[-1,0]]", "--n", "7"]);
}

#[test]
fn golden_oracle_and_solve() {
    golden(
        "oracle_bound1.jsonl",
        &["oracle", "--a", "1", "--b", "1", "--c", "2", "--m", "2", "--n", "2", "--bound", "1"],
    );
    golden(
        "solve_small.json",
        &with("solve", &QUAD, &["--uv-limit", "2", "--param-bound", "1"]),
    );
    golden(
        "solve_small.txt",
        &with("solve", &QUAD, &["--uv-limit", "2", "--param-bound", "1", "--format", "text"]),
    );
}

#[test]
fn spec_examples() {
    let v = json(&with("classify", &QUAD, &[]));
    assert_eq!(v["verdict"], "Parametrized");
    assert_eq!(v["citation"], "thm-4.1");
    let fams = v["payload"]["families"].as_array().unwrap();
    assert!(fams.iter().any(|f| f["tag"] == "PellParametrized"
        && f["params"]["u"] == 7
        && f["params"]["v"] == 4));

    let v = json(&with("verify", &QUAD, &["--x", "[[1,2],[2,5]]", "--y", "[[1,1],[1,3]]"]));
    assert_eq!(v["satisfied"], true);
    assert_eq!(v["family"]["tag"], "PellParametrized");
    assert_eq!((v["family"]["params"]["u"].as_i64(), v["family"]["params"]["v"].as_i64()), (Some(7), Some(4)));

    assert_eq!(json(&["pell", "--d", "3"]), serde_json::json!({"u": 2, "v": 1}));
}

#[test]
fn oracle_lines_are_json_objects() {
    let out = bin(&["oracle", "--a", "1", "--b", "1", "--c", "1", "--m", "4", "--n", "4", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.is_empty());
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["x", "y", "family", "commuting", "nontrivial"]);
    }
}

#[test]
fn exit_codes() {
    // verification failure
    let out = bin(&["verify", "--a", "1", "--b", "1", "--c", "1", "--m", "2", "--n", "2", "--x", "[[0,0],[0,0]]", "--y", "[[0,0],[0,0]]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&["verify", "--a", "1", "--b", "1", "--c", "1", "--m", "2", "--n", "2", "--x", "[[0,0],[0,0]]", "--y", "[[0,0],[0,0]]"])["satisfied"], false);

    // X² + Y² = 7I has nothing with entries in [-1, 1]
    let out = bin(&["oracle", "--a", "1", "--b", "1", "--c", "7", "--m", "2", "--n", "2", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());

    // certified empty
    let out = bin(&["solve", "--lambda", "1", "--m", "9", "--n", "9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_name_the_flag() {
    let cases: &[(&[&str], &str)] = &[
        (&["classify", "--a", "0", "--b", "1", "--c", "1", "--m", "2", "--n", "2"], "--a"),
        (&["classify", "--a", "1", "--c", "1", "--m", "2", "--n", "2"], "--b"),
        (&["classify", "--a", "2", "--b", "4", "--c", "6", "--m", "2", "--n", "2"], "--c"),
        (&["classify", "--a", "1", "--b", "1", "--c", "1", "--m", "0", "--n", "2"], "--m"),
        (&["classify", "--a", "1", "--b", "1", "--c", "1", "--m", "2"], "--n"),
        (&["classify", "--lambda", "2", "--c", "5", "--m", "2", "--n", "2"], "--lambda"),
        (&["verify", "--a", "1", "--b", "1", "--c", "1", "--m", "2", "--n", "2", "--x", "[[1,2]]", "--y", "[[0,0],[0,0]]"], "--x"),
        (&["oracle", "--a", "1", "--b", "1", "--c", "1", "--m", "2", "--n", "2", "--format", "yaml"], "--format"),
        (&["pell", "--d", "4"], "--d"),
        (&["pell", "--a", "1", "--b", "-4", "--c", "1"], "--b"),
        (&["pell", "--d", "2", "--a", "1"], "--a"),
        (&["power", "--x", "[[1,0],[0,1]]", "--n", "x"], "--n"),
    ];
    for (args, flag) in cases {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains(flag), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn big_coefficients_round_trip() {
    let c = "1267650600228229401496703205376"; // 2^100
    let v = json(&["classify", "--a", "1", "--b", "-3", "--c", c, "--m", "3", "--n", "3"]);
    assert!(v["verdict"].is_string());
    let out = stdout(&bin(&["power", "--x", "[[2,0],[0,2]]", "--n", "100"]));
    assert!(out.contains(&format!("\"power\":[[{c},0],[0,{c}]]")), "{out}");
}

#[test]
fn deterministic_and_job_independent() {
    let base = ["oracle", "--a", "1", "--b", "-3", "--c", "-1", "--m", "2", "--n", "2", "--bound", "2"];
    let run = |jobs: &str| {
        let mut args = base.to_vec();
        args.extend(["--jobs", jobs]);
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    let serial = run("1");
    assert_eq!(serial, run("1"));
    for jobs in ["2", "3", "8", "0"] {
        assert_eq!(serial, run(jobs), "--jobs {jobs}");
    }
    let solve = with("solve", &QUAD, &["--param-bound", "1"]);
    assert_eq!(bin(&solve).stdout, bin(&solve).stdout);
}

#[test]
fn in_process_matches_binary() {
    let args = with("classify", &QUAD, &[]);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = matdioph::cli::run(std::iter::once("matdioph").chain(args.iter().copied()), &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert_eq!(out, bin(&args).stdout);
}
