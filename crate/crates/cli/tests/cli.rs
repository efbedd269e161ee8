use std::path::PathBuf;
use std::process::{Command, Output};

fn sylowkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sylowkit"))
        .args(args)
        .env_remove("SYLOWKIT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sylowkit-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn field<'a>(stdout: &'a str, key: &str) -> Vec<&'a str> {
    stdout.lines().filter_map(|l| l.strip_prefix(key)?.strip_prefix('=')).collect()
}

#[test]
fn prop31_example_passes_five_checks() {
    let o = sylowkit(&["verify", "--suite", "prop31", "--p", "5", "--k", "1", "--m", "3", "--seed", "7"]);
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert_eq!(code(&o), 0, "{text}");
    assert_eq!(field(&text, "status"), vec!["pass"; 5]);
    assert_eq!(field(&text, "verdict"), vec!["pass"]);
    assert!(field(&text, "elapsed_ms").is_empty());
}

#[test]
fn same_seed_gives_identical_bytes() {
    let args = ["verify", "--suite", "formulas", "--p", "5", "--q", "5", "--n", "5", "--samples", "200", "--seed", "11"];
    let a = sylowkit(&args);
    let b = sylowkit(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let mut other = args;
    other[12] = "12";
    let c = sylowkit(&other);
    assert_eq!(code(&c), 0);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn timing_only_when_requested() {
    let o = sylowkit(&["verify", "--suite", "sylow", "--p", "5", "--q", "5", "--n", "3", "--timing"]);
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert_eq!(code(&o), 0);
    assert!(!field(&text, "elapsed_ms").is_empty());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--suite", "sylow", "--p", "3", "--q", "3", "--n", "3"][..],
        &["verify", "--suite", "sylow", "--p", "5", "--q", "7", "--n", "3"],
        &["verify", "--suite", "prop31", "--p", "5", "--k", "1"],
        &["compute", "--p", "5", "--r", "1"],
        &["verify", "--suite", "nonsense", "--p", "5"],
        &["construct", "--corpus"],
    ] {
        let o = sylowkit(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn over_budget_exits_3() {
    let o = sylowkit(&["verify", "--suite", "sylow", "--p", "5", "--q", "5", "--n", "4", "--budget", "1000"]);
    assert_eq!(code(&o), 3);
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert_eq!(field(&text, "verdict"), vec!["fail"]);
    assert_eq!(field(&text, "error").len(), 1);
}

#[test]
fn unwritable_output_exits_4() {
    let dir = scratch("io");
    let target = dir.join("missing").join("deeper").join("report.txt");
    std::fs::write(dir.join("missing"), b"a file, not a directory").unwrap();
    let o = sylowkit(&[
        "verify", "--suite", "sylow", "--p", "5", "--q", "5", "--n", "2",
        "--out", target.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 4);
}

#[test]
fn report_written_to_out_matches_stdout() {
    let dir = scratch("out");
    let path = dir.join("report.txt");
    let o = sylowkit(&[
        "conjecture", "--p", "5", "--q", "5", "--n", "3", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
}

#[test]
fn cache_written_then_hit_then_mismatch() {
    let dir = scratch("cache");
    let path = dir.join("s553.cache");
    let p = path.to_str().unwrap();
    let first = sylowkit(&["construct", "--p", "5", "--q", "5", "--n", "3", "--out", p]);
    let first_text = String::from_utf8(first.stdout.clone()).unwrap();
    assert_eq!(code(&first), 0, "{first_text}");
    assert_eq!(field(&first_text, "cache_status"), vec!["written"]);
    let bytes = std::fs::read(&path).unwrap();

    let second = sylowkit(&["construct", "--p", "5", "--q", "5", "--n", "3", "--out", p]);
    let second_text = String::from_utf8(second.stdout.clone()).unwrap();
    assert_eq!(code(&second), 0);
    assert_eq!(field(&second_text, "cache_status"), vec!["hit"]);
    assert_eq!(field(&first_text, "element_sha256"), field(&second_text, "element_sha256"));
    assert_eq!(std::fs::read(&path).unwrap(), bytes);

    let wrong = sylowkit(&["construct", "--p", "5", "--q", "5", "--n", "2", "--out", p]);
    assert_eq!(code(&wrong), 5);

    std::fs::write(&path, b"UGCACHE1 truncated").unwrap();
    let corrupt = sylowkit(&["construct", "--p", "5", "--q", "5", "--n", "3", "--out", p]);
    assert_eq!(code(&corrupt), 5);
}

#[test]
fn cache_dir_from_environment() {
    let dir = scratch("env");
    let o = Command::new(env!("CARGO_BIN_EXE_sylowkit"))
        .args(["verify", "--suite", "sylow", "--p", "5", "--q", "25", "--n", "2"])
        .env("SYLOWKIT_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(dir.join("sylow-p5-q25-n2.cache").exists());
}

#[test]
fn wreath_and_corpus_targets() {
    let o = sylowkit(&["verify", "--suite", "thm26", "--p", "5", "--r", "1", "--height", "1"]);
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert_eq!(code(&o), 0, "{text}");
    assert_eq!(field(&text, "j_order"), vec!["3125"]);
    let o = sylowkit(&["conjecture", "--corpus"]);
    assert_eq!(code(&o), 0);
}
