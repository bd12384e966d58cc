use std::process::{Command, Output};

use bacbound_core::bounds::BoundCurve;
use bacbound_core::families::parse_family;
use bacbound_core::systems::{is_valid_system, UnionFreeSystem};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bacbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn table_value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| {
            l.strip_prefix(key)
                .map(|v| v.trim().parse::<f64>().unwrap())
        })
        .unwrap_or_else(|| panic!("no {key} row in {text}"))
}

#[test]
fn bounds_at_full_rate() {
    let o = run(&["bound", "--r1", "1", "--which", "all", "--grid", "1024"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("simple  0.500000"), "{text}");
    assert!((table_value(&text, "ul") - 0.49216).abs() < 1e-3);
    assert!((table_value(&text, "main") - 0.4798).abs() < 1e-3);
    assert_eq!(table_value(&text, "weldon"), 0.0);
}

#[test]
fn single_bound_as_json() {
    let o = run(&["--json", "bound", "--r1", "0.5", "--which", "simple"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["bounds"][0]["bound"], "simple");
    assert_eq!(v["bounds"][0]["r2"], 1.0);
}

#[test]
fn sauer_fixture() {
    let text = stdout(&run(&["sauer", "--n", "4", "--d", "2", "--k", "1"]));
    assert_eq!(table_value(&text, "t*"), 2.0);
    assert_eq!(table_value(&text, "bound"), 14.0);
    let v = json(&run(&[
        "sauer", "--n", "10", "--d", "3", "--k", "4", "--json",
    ]));
    // C(7, 1) = 7 >= 4 already at t = 4
    assert_eq!(v["t_star"], 4);
    // the exact rational prints as p/q or an integer
    assert!(v["bound"]
        .as_str()
        .unwrap()
        .chars()
        .all(|c| c.is_ascii_digit() || c == '/'));
}

#[test]
fn verify_all_passes_and_is_reproducible() {
    let a = run(&["verify", "--suite", "all", "--json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let v = json(&a);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 20);
    assert!(checks.iter().all(|c| c["passed"] == true));
    let b = run(&["verify", "--suite", "all", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_seed_changes_nothing_about_outcome() {
    let o = run(&["verify", "--suite", "distributions", "--seed", "99"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.starts_with("PASS")));
}

#[test]
fn curve_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let p = path.to_str().unwrap();
    let args = [
        "curve", "--from", "0.98", "--to", "1", "--steps", "3", "--grid", "256",
    ];
    let o = run(&[&args[..], &["--out", p]].concat());
    assert!(o.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("r1,simple,ul,main\n"));
    let parsed = BoundCurve::read_csv(written.as_bytes()).unwrap();
    assert_eq!(parsed.rows.len(), 3);
    assert_eq!(parsed.to_csv_string(), written);
    // stdout carries the identical document
    assert_eq!(stdout(&run(&args)), written);
}

#[test]
fn search_reports_exact_pair() {
    let v = json(&run(&["--json", "search", "--n", "2"]));
    assert_eq!(v["product"], 6);
    assert_eq!(v["exact"], true);
    let f1 = parse_family(v["f1"].as_str().unwrap()).unwrap();
    let f2 = parse_family(v["f2"].as_str().unwrap()).unwrap();
    assert_eq!(f1.len() * f2.len(), 6);
    let text = stdout(&run(&["search", "--n", "1"]));
    assert!(text.contains("product 2\nexact true\n"), "{text}");
}

#[test]
fn log3_system_export_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sys.json");
    let p = path.to_str().unwrap();
    let o = run(&["system", "--log3", "--n", "6", "--out", p]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(table_value(&text, "m0"), 15.0);
    assert!(text.contains("valid  true"));
    let u = UnionFreeSystem::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(is_valid_system(&u), Ok(true));

    let o = run(&["verify", "--suite", "entropy", "--system", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS  systems/input_system_valid"));
}

#[test]
fn invalid_system_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // {∅} ⊎ {∅,{1}} and {{1}} ⊎ {∅} share the sum vector (1)
    let doc = r#"{"n":1,"m0":2,"m1":1,"m2":2,"pairs":[["n=1\n-\n","n=1\n-\n1\n"],["n=1\n1\n","n=1\n-\n1\n"]]}"#;
    std::fs::write(&path, doc).unwrap();
    let o = run(&[
        "verify",
        "--suite",
        "entropy",
        "--system",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL  systems/input_system_valid"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bound", "--r1", "2"][..],
        &["bound"],
        &["bound", "--r1", "0.5", "--which", "best"],
        &["frobnicate"],
        &["verify", "--suite", "bogus"],
        &["sauer", "--n", "4", "--d", "5", "--k", "1"],
        &["curve", "--from", "0.9", "--to", "0.8"],
        &["system", "--log3", "--n", "4"],
        &["search", "--n", "2", "--budget", "-1"],
        &["bound", "--r1", "0.5", "--bogus-flag"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}
