use std::path::Path;
use std::process::{Command, Output};

use brigkit::report::read_csv;
use brigkit::Report;

fn brigkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brigkit"))
        .args(args)
        .env_remove("BRIGKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn run_ok(args: &[&str]) -> String {
    let o = brigkit(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn classify_lines() {
    assert_eq!(run_ok(&["classify", "--a", "3", "--b", "6", "--p", "5", "--q", "6"]), "non-real");
    assert_eq!(
        run_ok(&["classify", "--a", "0", "--b", "0", "--p", "0", "--q", "0"]),
        "degenerate: both initial values zero"
    );
    assert_eq!(
        run_ok(&["classify", "--a", "1", "--b", "1", "--p", "1", "--q", "1"]),
        "degenerate: root-of-unity ratio, order 3"
    );
    assert_eq!(
        run_ok(&["classify", "--a", "-100000000000000000000000", "--b", "7", "--p", "1", "--q", "-1"]),
        "real"
    );
    assert_eq!(brigkit(&["classify", "--a", "x1"]).status.code(), Some(1));
}

#[test]
fn term_values() {
    assert_eq!(run_ok(&["term", "--a", "3", "--b", "2", "--p", "31", "--q", "30", "--n", "5"]), "0");
    assert_eq!(run_ok(&["term", "--p", "-12", "--n", "0"]), "-12");
    let fib = ["term", "--a", "1", "--b", "-1", "--p", "0", "--q", "1", "--n", "100"];
    let fast = run_ok(&[&fib[..], &["--fast"]].concat());
    let iter = run_ok(&[&fib[..], &["--iter"]].concat());
    assert_eq!(fast, "354224848179261915075");
    assert_eq!(fast, iter);
    assert_eq!(brigkit(&["term", "--n", "-1"]).status.code(), Some(1));
    assert_eq!(brigkit(&["term", "--n", "3", "--fast", "--iter"]).status.code(), Some(1));
}

#[test]
fn zero_lines() {
    assert_eq!(
        run_ok(&["zeros", "--a", "3", "--b", "6", "--p", "5", "--q", "6", "--c4", "1000"]),
        "zero at k=5 (bound 1000, conclusive under c4)"
    );
    assert_eq!(
        run_ok(&["zeros", "--a", "1", "--b", "-1", "--p", "1", "--q", "2"]),
        "no zero up to 19, conclusive"
    );
    assert_eq!(
        run_ok(&["zeros", "--a", "1", "--b", "1", "--p", "0", "--q", "1"]),
        "periodic zeros: n mod 3 in {0}"
    );
    let json = run_ok(&["zeros", "--a", "3", "--b", "6", "--p", "5", "--q", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["bound"], 10000);
    assert_eq!(v["conclusive"], false);
}

#[test]
fn make_zero_lines() {
    assert_eq!(run_ok(&["make-zero", "--a", "3", "--b", "6", "--k", "5"]), "P=-5 Q=-6");
    assert_eq!(run_ok(&["make-zero", "--a", "-4", "--b", "7", "--k", "2"]), "P=-4 Q=7");
    let table = run_ok(&["make-zero", "--a", "3", "--b", "6", "--family", "--kmax", "6"]);
    assert_eq!(table.lines().count(), 6);
    assert_eq!(table.lines().last().unwrap(), "6 -81 -270 -3 -10");
    assert_eq!(brigkit(&["make-zero", "--a", "0", "--b", "6", "--k", "5"]).status.code(), Some(1));
    assert_eq!(brigkit(&["make-zero", "--a", "3", "--b", "6"]).status.code(), Some(1));
}

#[test]
fn growth_lines() {
    let t = run_ok(&["growth", "--a", "1", "--b", "2", "--p", "1", "--q", "1", "--n", "7", "--check", "nonreal"]);
    assert!(t.contains("holds=false (below threshold)"), "{t}");
    let alias = run_ok(&["growth", "--a", "1", "--b", "2", "--p", "1", "--q", "1", "--n", "7", "--check", "thm24"]);
    assert_eq!(alias, t);
    let t = run_ok(&["growth", "--a", "10", "--b", "1", "--p", "1", "--q", "1", "--n", "5", "--check", "real"]);
    assert!(t.contains("not applicable"), "{t}");
    let t = run_ok(&["growth", "--a", "10", "--b", "1", "--p", "1", "--q", "1", "--n", "50", "--check", "real"]);
    assert!(t.contains("holds=true"), "{t}");
    let t = run_ok(&["growth", "--a", "1", "--b", "-1", "--p", "1", "--q", "1", "--check", "height"]);
    assert!(t.starts_with("H=3, sandwich holds"), "{t}");
    let t = run_ok(&["growth", "--a", "3", "--b", "2", "--n", "5", "--check", "lucas"]);
    assert!(t.contains("holds=true"), "{t}");
    let t = run_ok(&["growth", "--a", "50", "--b", "600", "--p", "1", "--q", "1", "--n", "9", "--check", "sharp"]);
    assert!(t.starts_with("sharp-a n=9"), "{t}");
    let o = brigkit(&["growth", "--a", "1", "--b", "2", "--p", "1", "--q", "1", "--n", "7", "--check", "real"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(brigkit(&["growth", "--check", "bogus"]).status.code(), Some(1));
}

fn sweep(dir: &Path, name: &str, extra: &[&str]) -> (Output, std::path::PathBuf) {
    let out = dir.join(name);
    let mut args = vec![
        "sweep", "--a-range", "-3:3", "--b-range", "-3:3", "--p-range", "-2:2", "--q-range", "-2:2",
        "--horizon", "60", "--oracle-horizon", "200", "--c4", "200", "--output",
    ];
    args.push(out.to_str().unwrap());
    args.extend_from_slice(extra);
    (brigkit(&args), out)
}

#[test]
fn sweep_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (o1, p1) = sweep(dir.path(), "one.json", &["--threads", "1"]);
    assert_eq!(o1.status.code(), Some(0), "{}", String::from_utf8_lossy(&o1.stderr));
    let (o4, p4) = sweep(dir.path(), "four.json", &["--threads", "4"]);
    assert_eq!(o4.status.code(), Some(0));
    let a = std::fs::read_to_string(&p1).unwrap();
    let b = std::fs::read_to_string(&p4).unwrap();
    assert_eq!(a, b);

    let report = Report::from_json(&a).unwrap();
    assert_eq!(report.to_json(), a);
    assert_eq!(report.summary.records, 7 * 7 * 5 * 5);
    assert_eq!(report.summary.violations, 0);
    report.check_consistency().unwrap();
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v["records"][0]["params"]["a"].is_string());
    assert!(v["meta"]["config"].get("parallelism").is_none());

    let (oc, pc) = sweep(dir.path(), "r.csv", &["--format", "csv"]);
    assert_eq!(oc.status.code(), Some(0));
    let csv_text = std::fs::read_to_string(&pc).unwrap();
    let records = read_csv(csv_text.as_bytes()).unwrap();
    assert_eq!(records, report.records);
    assert_eq!(brigkit::report::records_to_csv(&records), csv_text);
}

#[test]
fn sweep_config_file_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let out = dir.path().join("env.json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"a": [1, 3], "b": [-2, 2], "p": [1, 2], "q": [-1, 1], "n_horizon": 40,
                "c4": 100, "c5": "25/2", "oracle_horizon": 150, "parallelism": 1,
                "output_path": {:?}, "format": "json"}}"#,
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_brigkit"))
        .args(["sweep", "--config", cfg.to_str().unwrap()])
        .env("BRIGKIT_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.summary.grid_points, 3 * 5 * 2 * 3);
    assert_eq!(report.meta.config.c5, "25/2");

    let bad = Command::new(env!("CARGO_BIN_EXE_brigkit"))
        .args(["sweep", "--config", cfg.to_str().unwrap()])
        .env("BRIGKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn sweep_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (o, p) = sweep(dir.path(), "empty.json", &["--a-range", "2:1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!p.exists());
    let (o, _) = sweep(dir.path(), "h.json", &["--horizon", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let (o, _) = sweep(dir.path(), "t.json", &["--threads", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let missing = dir.path().join("no/such/dir/out.json");
    let o = brigkit(&["sweep", "--a-range", "1:1", "--b-range", "1:1", "--p-range", "1:1",
                      "--q-range", "1:1", "--output", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!missing.exists());
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{\"unknown\": 1}").unwrap();
    assert_eq!(brigkit(&["sweep", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(brigkit(&["--help"]).status.code(), Some(0));
    assert_eq!(brigkit(&["--version"]).status.code(), Some(0));
    assert_eq!(brigkit(&[]).status.code(), Some(1));
}
