use std::path::PathBuf;

use serde_json::Value;
use thh_core::cli::run;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn thh(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("thh").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn pinned(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

#[test]
fn faces_of_the_hexagon() {
    let (code, out, _) = thh(&["faces", "--kind", "W", "--n", "3", "--codim", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, pinned("faces_w3_codim1.txt"));
    assert!(out.ends_with("6 faces\n"));
}

#[test]
fn fvector_of_k5() {
    let (code, out, _) = thh(&["fvector", "--kind", "K", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, pinned("fvector_k5.txt"));
}

#[test]
fn resolve_k1_is_free_of_rank_two() {
    let (code, out, _) = thh(&["resolve", "--preset", "k1", "--prime", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, pinned("resolve_k1_p3.txt"));
    assert!(out.contains("free of rank 2 over Z_3[v1^±1]"));
}

#[test]
fn resolve_ku2_json() {
    let (code, out, _) = thh(&["--json", "resolve", "--preset", "ku2"]);
    assert_eq!(code, 0);
    assert_eq!(out, pinned("resolve_ku2.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["variant"], "cohomology");
    assert_eq!(v["result"]["kind"], "completed-base");
    assert_eq!(v["extensions"][0]["f"], "u*q");
    assert!(v["bidegrees"].is_array() && v["entries"].is_array());
}

#[test]
fn homology_reports_towers() {
    let (code, out, _) = thh(&[
        "--json",
        "resolve",
        "--preset",
        "k1",
        "--variant",
        "homology",
        "--degree",
        "8",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["kind"], "towers");
    let degrees: Vec<i64> = v["result"]["towers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["degree"].as_i64().unwrap())
        .collect();
    assert_eq!(degrees, vec![0, 2, 4, 6, 8]);
}

#[test]
fn spec_file_matches_preset_shape() {
    let path = fixture("ku3.toml");
    let (code, out, _) = thh(&["resolve", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("result: completed base Z_3[u^±1]"));
    assert!(out.contains("relation: q = 3*u^-1"));
}

#[test]
fn malformed_spec_reports_position() {
    let path = fixture("malformed.toml");
    let (code, out, err) = thh(&["resolve", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("--spec"));
    assert!(err.contains("line 3, column 1"), "{err}");
}

#[test]
fn validation_errors_name_the_option() {
    let cases: [(&[&str], &str); 6] = [
        (&["faces", "--kind", "X", "--n", "3"], "--kind"),
        (
            &["faces", "--kind", "K", "--n", "4", "--codim", "9"],
            "--codim",
        ),
        (&["resolve", "--preset", "k1", "--prime", "4"], "--prime"),
        (&["resolve", "--preset", "kup"], "--cmatrix"),
        (
            &["resolve", "--preset", "k1", "--variant", "both"],
            "--variant",
        ),
        (&["bokstedt", "--prime", "2"], "--prime"),
    ];
    for (args, option) in cases {
        let (code, _, err) = thh(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(err.contains(option), "{args:?}: {err}");
    }
    let (code, _, _) = thh(&["faces", "--n", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn strict_exits_three_on_unresolved() {
    let args = ["resolve", "--preset", "kn", "--height", "2", "--prime", "3"];
    let (code, out, _) = thh(&args);
    assert_eq!(code, 0);
    assert!(out.contains("result: unresolved"));
    let mut strict = vec!["--strict"];
    strict.extend(args);
    assert_eq!(thh(&strict).0, 3);
    let mut conj = strict.clone();
    conj.push("--conjectural");
    let (code, out, _) = thh(&conj);
    assert_eq!(code, 0);
    assert!(out.contains("tags: conjectural-input"));
}

#[test]
fn cache_returns_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "resolve", "--preset", "k1"];
    let first = thh(&args);
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
    let second = thh(&args);
    assert_eq!(first, second);

    let uncached = tempfile::tempdir().unwrap();
    let u = uncached.path().to_str().unwrap();
    let third = thh(&["--no-cache", "--cache-dir", u, "resolve", "--preset", "k1"]);
    assert_eq!(third.1, first.1);
    assert_eq!(std::fs::read_dir(uncached.path()).unwrap().count(), 0);

    // A different request gets a different entry.
    thh(&["--cache-dir", d, "resolve", "--preset", "ku2"]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn unwritable_cache_warns_and_proceeds() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let bad = blocker.join("cache");
    let (code, out, err) = thh(&[
        "--cache-dir",
        bad.to_str().unwrap(),
        "fvector",
        "--kind",
        "K",
        "--n",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, pinned("fvector_k5.txt"));
    assert!(err.starts_with("warning:"));
}

#[test]
fn config_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("thh.toml");
    std::fs::write(&cfg, "degree = 4\n").unwrap();
    let (code, out, _) = thh(&[
        "--config",
        cfg.to_str().unwrap(),
        "bokstedt",
        "--prime",
        "3",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("total degree <= 4"));
    std::fs::write(&cfg, "degre = 4\n").unwrap();
    let (code, _, err) = thh(&["--config", cfg.to_str().unwrap(), "bokstedt"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 1"), "{err}");
}

#[test]
fn moduli_check_and_obstruction() {
    let (code, out, _) = thh(&[
        "moduli-check",
        "--prime",
        "3",
        "--m",
        "2",
        "--term",
        "1;2=1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("associative: true"));
    assert!(out.contains("C invertible: true"));
    let (code, out, _) = thh(&["obstruction", "--preset", "moore", "--prime", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("degree 7"));
}
