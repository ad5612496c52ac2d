use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn okkit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_okkit"))
        .current_dir(dir)
        .env("OKKIT_THREADS", "2")
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn body_outputs_match_golden_files() {
    let d = tempfile::tempdir().unwrap();
    for e in ["p1", "elliptic"] {
        let o = okkit(d.path(), &["body", e, "--out", "o"]);
        assert_eq!(code(&o), 0);
        let file = format!("{e}.body.json");
        assert_eq!(std::fs::read_to_string(d.path().join("o").join(&file)).unwrap(), golden(&file));
        let svg = std::fs::read_to_string(d.path().join("o").join(format!("{e}.body.svg"))).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("<line"));
    }
    let v = read_json(&d.path().join("o/elliptic.body.json"));
    assert_eq!(v["vertices"], serde_json::json!([[[0, 1]], [[3, 1]]]));
    assert_eq!(v["volume"], serde_json::json!([3, 1]));
}

#[test]
fn polygon_bodies_are_filled_paths() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&okkit(d.path(), &["body", "p1xp1"])), 0);
    let svg = std::fs::read_to_string(d.path().join("okkit-out/p1xp1.body.svg")).unwrap();
    assert!(svg.contains("<path d=\"M"));
    assert_eq!(code(&okkit(d.path(), &["body", "gl3-flag"])), 0);
    let svg = std::fs::read_to_string(d.path().join("okkit-out/gl3-flag.body.svg")).unwrap();
    assert!(svg.contains("projection onto coordinates"));
}

#[test]
fn unknown_names_are_usage_errors() {
    let d = tempfile::tempdir().unwrap();
    for cmd in ["body", "degenerate", "flow", "check", "slice"] {
        let o = okkit(d.path(), &[cmd, "no-such-entry"]);
        assert_eq!(code(&o), 2, "{cmd}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-entry"));
    }
    assert_eq!(code(&okkit(d.path(), &["frobnicate"])), 2);
    assert_eq!(code(&okkit(d.path(), &["body"])), 2);
}

#[test]
fn list_names_every_entry() {
    let d = tempfile::tempdir().unwrap();
    let o = okkit(d.path(), &["list"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    for name in ["p1", "p1xp1", "elliptic", "gl3-flag", "elliptic-quotient-demo"] {
        assert!(text.lines().any(|l| l.starts_with(name)));
    }
}

#[test]
fn degenerate_writes_verified_families() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&okkit(d.path(), &["degenerate", "elliptic", "--out", "o"])), 0);
    let text = std::fs::read_to_string(d.path().join("o/elliptic.family.json")).unwrap();
    assert_eq!(text, golden("elliptic.family.json"));
    // an already toric entry has a parameter-free family
    assert_eq!(code(&okkit(d.path(), &["degenerate", "p1xp1", "--out", "o"])), 0);
    let v = read_json(&d.path().join("o/p1xp1.family.json"));
    for r in v["relations"].as_array().unwrap() {
        assert!(!r["family"].as_str().unwrap().contains('t'));
        assert_eq!(r["family"], r["relation"]);
    }
}

#[test]
fn entry_files_missing_relations_are_rejected() {
    let d = tempfile::tempdir().unwrap();
    let src = okkit_core::catalog::builtin_source("elliptic").unwrap();
    let mut v: Value = serde_json::from_str(src).unwrap();
    v.as_object_mut().unwrap().remove("relations");
    std::fs::write(d.path().join("e.json"), v.to_string()).unwrap();
    let o = okkit(d.path(), &["degenerate", "e.json"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("relations"));
}

#[test]
fn check_reports_tables() {
    let d = tempfile::tempdir().unwrap();
    let o = okkit(d.path(), &["check", "elliptic"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("PASS") && !text.contains("FAIL"));
    let o = okkit(d.path(), &["check", "p1xp1"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("Poisson brackets") && l.contains("PASS")));
}

#[test]
fn check_flags_corrupted_entries() {
    let d = tempfile::tempdir().unwrap();
    let src = okkit_core::catalog::builtin_source("elliptic").unwrap();
    let mut v: Value = serde_json::from_str(src).unwrap();
    v["expected"]["degree"] = serde_json::json!([4, 1]);
    std::fs::write(d.path().join("bad.json"), v.to_string()).unwrap();
    let o = okkit(d.path(), &["check", "bad.json"]);
    assert_eq!(code(&o), 1);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("FAIL") && text.contains("degree"));
}

#[test]
fn flow_outputs_and_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let o = okkit(d.path(), &["flow", "p1", "--samples", "50", "--out", "o"]);
    assert_eq!(code(&o), 0);
    let v = read_json(&d.path().join("o/p1.flow.json"));
    assert_eq!(v["succeeded"], 50);
    let lo = v["summary"]["value_min"][0].as_f64().unwrap();
    let hi = v["summary"]["value_max"][0].as_f64().unwrap();
    assert!(lo >= -1e-6 && hi <= 1.0 + 1e-6);
    let csv = std::fs::read_to_string(d.path().join("o/p1.flow.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "sample_id,s,t_re,t_im,chart,residual,Impi,ReLinErr,F_1,status"
    );
    assert!(std::fs::read_to_string(d.path().join("o/p1.flow.svg")).unwrap().contains("<circle"));

    let o = okkit(d.path(), &["flow", "p1", "--samples", "0"]);
    assert_eq!(code(&o), 2);
    let o = okkit(d.path(), &["flow", "p1", "--delta", "0.9"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn flow_is_deterministic_across_thread_counts() {
    let d = tempfile::tempdir().unwrap();
    let run = |threads: &str, out: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_okkit"))
            .current_dir(d.path())
            .env("OKKIT_THREADS", threads)
            .args(["flow", "elliptic", "--samples", "16", "--seed", "9", "--out", out])
            .output()
            .unwrap();
        assert_eq!(code(&o), 0);
    };
    run("1", "a");
    run("3", "b");
    for f in ["elliptic.flow.json", "elliptic.flow.csv", "elliptic.flow.svg"] {
        assert_eq!(
            std::fs::read(d.path().join("a").join(f)).unwrap(),
            std::fs::read(d.path().join("b").join(f)).unwrap(),
            "{f}"
        );
    }
    let o = Command::new(env!("CARGO_BIN_EXE_okkit"))
        .current_dir(d.path())
        .env("OKKIT_THREADS", "zero")
        .args(["flow", "p1", "--samples", "2"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn elliptic_flow_covers_the_segment() {
    let d = tempfile::tempdir().unwrap();
    let o = okkit(d.path(), &["flow", "elliptic", "--samples", "200"]);
    assert_eq!(code(&o), 0);
    let v = read_json(&d.path().join("okkit-out/elliptic.flow.json"));
    assert!(v["coverage"].as_f64().unwrap() >= 0.95);
    assert!(v["summary"]["max_body_violation"].as_f64().unwrap() < 1e-2);
}

#[test]
fn config_files() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("run.cfg"), "# quick run\ninput = p1\nsamples = 4\nseed = 2 # any\noutput = from-cfg\n").unwrap();
    let o = okkit(d.path(), &["--config", "run.cfg", "flow"]);
    assert_eq!(code(&o), 0);
    assert_eq!(read_json(&d.path().join("from-cfg/p1.flow.json"))["samples"], 4);
    // flags override the file
    let o = okkit(d.path(), &["--config", "run.cfg", "flow", "--samples", "3", "--out", "flags"]);
    assert_eq!(code(&o), 0);
    assert_eq!(read_json(&d.path().join("flags/p1.flow.json"))["samples"], 3);

    std::fs::write(d.path().join("bad.cfg"), "input = p1\ncolour = blue\n").unwrap();
    let o = okkit(d.path(), &["--config", "bad.cfg", "flow"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn slicing() {
    let d = tempfile::tempdir().unwrap();
    let o = okkit(d.path(), &["slice", "elliptic-quotient-demo"]);
    assert_eq!(code(&o), 0);
    let v = read_json(&d.path().join("okkit-out/elliptic-quotient-demo.slice.json"));
    assert_eq!(v["slice"]["body"]["vertices"], serde_json::json!([[[1, 1]]]));
    assert_eq!(v["commutation"]["succeeded"], 50);
    assert!(v["commutation"]["max_residual"].as_f64().unwrap() < 1e-6);

    std::fs::write(d.path().join("zero.json"), "[]").unwrap();
    let o = okkit(d.path(), &["slice", "elliptic", "--homomorphism", "zero.json", "--samples", "5"]);
    assert_eq!(code(&o), 0);
    let v = read_json(&d.path().join("okkit-out/elliptic.slice.json"));
    assert_eq!(v["slice"]["body"], read_json(Path::new(&format!("{}/tests/golden/elliptic.body.json", env!("CARGO_MANIFEST_DIR")))));

    std::fs::write(d.path().join("wide.json"), "[[1, 2, 3]]").unwrap();
    let o = okkit(d.path(), &["slice", "elliptic", "--homomorphism", "wide.json"]);
    assert_eq!(code(&o), 2);
    let o = okkit(d.path(), &["slice", "p1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn failing_samples_give_quality_exit() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("tight.cfg"), "max_steps = 1\n").unwrap();
    let o = okkit(d.path(), &["--config", "tight.cfg", "flow", "elliptic", "--samples", "5"]);
    assert_eq!(code(&o), 1);
    let v = read_json(&d.path().join("okkit-out/elliptic.flow.json"));
    assert_eq!(v["succeeded"], 0);
    let csv = std::fs::read_to_string(d.path().join("okkit-out/elliptic.flow.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| l.contains("failed")).count(), 5);
}
