use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evenset"))
        .args(args)
        .env_remove("EVENSET_COLOR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const III: &str = "\
ambient plane
k 0
fiber iii
comp t1 -1 4
comp t2 -2 2
comp C1 -4 1
comp C2 -4 1
meet t1 t2 1 a
meet t1 C1 1 b
meet t1 C2 1 c
end
";

#[test]
fn iii_fiber_contracts_twice() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["fiber", &write(dir.path(), "iii.cfg", III)]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("type III"), "{out}");
    assert_eq!(out.matches("  contract ").count(), 2, "{out}");
}

#[test]
fn ell_12_budget_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["catalog", "--export", "ell_12"]);
    assert!(o.status.success());
    let path = write(dir.path(), "ell.cfg", &stdout(&o));
    let o = run(&["fiber", &path, "--budget", "12"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.contains("budget 12/12 exact"), "{out}");
    assert_eq!(out.matches("type I1\n").count(), 12);
}

#[test]
fn unlabelled_tangency_warns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "ambient plane\nk 0\nfiber f\ncomp C -4 1\ncomp t -1 2\nmeet C t 2\nend\n";
    let out = stdout(&run(&["fiber", &write(dir.path(), "f.cfg", cfg)]));
    assert!(out.contains("ambiguous {I1 or II}"), "{out}");
    assert!(out.contains("warning:"), "{out}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.cfg", "ambient plane\nk 2\ncurve 1 -1 4\n");
    let o = run(&["verify", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("at line 3"));

    let junk = write(dir.path(), "junk.cfg", "ambient blah\n");
    assert_eq!(run(&["verify", &junk]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/definitely/not/here.cfg"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "bogus"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "ex.cfg", &stdout(&run(&["catalog", "--export", "ex8_4"])));
    let a = stdout(&run(&["--json", "classify", &path]));
    let b = stdout(&run(&["--json", "classify", &path]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["even_set"]["n"], 4);
}

#[test]
fn export_dir_round_trips_through_classify() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["catalog", "--all", "--export-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let mut n = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let o = run(&["classify", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}: {}", path.display(), stdout(&o));
        n += 1;
    }
    assert_eq!(n, 21);
}

#[test]
fn search_strict_transforms() {
    let loose: Value = serde_json::from_str(&stdout(&run(&[
        "--json", "search", "--k", "2", "--bound", "3", "--n", "1",
    ])))
    .unwrap();
    assert!(!loose["search"]["sets"].as_array().unwrap().is_empty());
    let strict: Value = serde_json::from_str(&stdout(&run(&[
        "--json",
        "search",
        "--k",
        "2",
        "--bound",
        "3",
        "--n",
        "1",
        "--strict-transforms",
    ])))
    .unwrap();
    assert!(strict["search"]["sets"].as_array().unwrap().is_empty());
}

#[test]
fn oversized_search_is_rejected() {
    let o = run(&["search", "--k", "40", "--bound", "3", "--n", "1"]);
    assert_ne!(o.status.code(), Some(0));
}
