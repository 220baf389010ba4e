use std::process::{Command, Output};

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fs-basis"));
    cmd.arg("--no-cache").args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_vacuum_row() {
    let o = run(&["enumerate", "--weight", "L0", "--max-degree", "2"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,weight,count"));
    assert_eq!(lines.next(), Some("0,,1"));
}

#[test]
fn sum_enumeration_allowed_at_any_rank() {
    let o = run(&["enumerate", "--rank", "5", "--weight", "L0+L1", "--max-degree", "1"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0,,1"));
}

#[test]
fn fundamental_level_two_rejected_off_rank_four() {
    let o = run(&["enumerate", "--rank", "5", "--weight", "L2"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("unsupported: level-2 verification requires rank 4"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "nonsense"], &[]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--weight", "L9"], &[]).status.code(), Some(2));
    assert_eq!(run(&["hwv", "--weight", "L2", "--pair", "L4"], &[]).status.code(), Some(2));
}

#[test]
fn replay_level_two_degree_three() {
    let o = run(&["verify", "replay", "--weight", "L2", "--degree", "3"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn span_sum_weight_passes() {
    let o = run(&["verify", "span", "--weight", "L3+L4", "--max-degree", "3", "--format", "csv"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn hwv_lambda2_has_two_terms() {
    let o = run(&["hwv", "--weight", "L2", "--pair", "L4,L4"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["support"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_summand_counts() {
    let count = |pair: &str| {
        let o = run(&["decompose", "--pair", pair], &[]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["decomposition"]["summands"].as_array().unwrap().len()
    };
    assert_eq!(count("L3,L4"), 2);
    assert_eq!(count("L4,L4"), 3);
}

#[test]
fn output_independent_of_thread_count() {
    let args = ["verify", "span", "--max-degree", "2"];
    let one = run(&args, &[("FS_THREADS", "1")]);
    let four = run(&[&["--threads", "4"], &args[..]].concat(), &[]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn out_file_and_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("chars.csv");
    let cache = dir.path().join("cache");
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_fs-basis"))
            .env("FS_CACHE_DIR", &cache)
            .args(["enumerate", "--weight", "L4", "--max-degree", "3", "--out"])
            .arg(&out)
            .output()
            .unwrap()
    };
    let first = go();
    assert_eq!(first.status.code(), Some(0));
    assert!(first.stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    go();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), written);
}
