use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn tlpss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlpss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// KONECT-style file with sparse labels, weights, a duplicate and a self loop.
fn write_konect(dir: &Path, name: &str, seed: u64) -> PathBuf {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::from("% sym unweighted\n% 600 40 40\n");
    for t in 0..600u32 {
        let u = rng.random_range(0..40u32) * 7 + 3;
        let v = rng.random_range(0..40u32) * 7 + 3;
        text.push_str(&format!("{u} {v} 1 {}\n", 1_000 + t / 3));
    }
    text.push_str("3 10 1 1200\n3 10 1 1200\n");
    text.push_str("17 17 1 1201\n");
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ingest_is_idempotent() {
    let dir = TempDir::new().unwrap();
    let raw = write_konect(dir.path(), "raw.txt", 1);
    let once = dir.path().join("once.tsv");
    let twice = dir.path().join("twice.tsv");
    let out = tlpss(&["ingest", s(&raw), s(&once)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["self_loops_dropped"].as_u64().unwrap() >= 1);
    assert!(dir.path().join("once.ids.tsv").is_file());
    assert!(dir.path().join("once.report.json").is_file());

    assert_eq!(code(&tlpss(&["ingest", s(&once), s(&twice)])), 0);
    assert_eq!(fs::read(&once).unwrap(), fs::read(&twice).unwrap());
}

#[test]
fn comment_only_input_is_a_data_error() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("empty.txt");
    fs::write(&raw, "% nothing here\n%\n").unwrap();
    let out = tlpss(&["ingest", s(&raw), s(&dir.path().join("o.tsv"))]);
    assert_eq!(code(&out), 3);
    let out = tlpss(&["evaluate", "--dataset", s(&raw), "--out-dir", s(dir.path())]);
    assert_eq!(code(&out), 3);
}

#[test]
fn malformed_line_is_a_data_error() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("bad.txt");
    fs::write(&raw, "1 2 1 5\n7\n").unwrap();
    let out = tlpss(&["ingest", s(&raw), s(&dir.path().join("o.tsv"))]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn bad_parameters_are_config_errors() {
    let dir = TempDir::new().unwrap();
    let raw = write_konect(dir.path(), "raw.txt", 2);
    let base = ["evaluate", "--dataset", s(&raw), "--out-dir", s(dir.path())];
    for extra in [
        &["--p", "0"][..],
        &["--q", "-1"],
        &["--ratio", "1.5"],
        &["--method", "katz"],
        &["--period", "0"],
        &["--top-l", "0"],
    ] {
        let args: Vec<&str> = base.iter().chain(extra).copied().collect();
        assert_eq!(code(&tlpss(&args)), 2, "{extra:?}");
    }
    let missing = dir.path().join("nope.txt");
    assert_eq!(code(&tlpss(&["evaluate", "--dataset", s(&missing)])), 3);
}

#[test]
fn single_timestamp_cannot_be_split() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("flat.txt");
    fs::write(&raw, "1 2 1 5\n2 3 1 5\n3 4 1 5\n").unwrap();
    let out = tlpss(&["evaluate", "--dataset", s(&raw), "--out-dir", s(dir.path())]);
    assert_eq!(code(&out), 4, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn evaluate_is_deterministic_and_embeds_config() {
    let dir = TempDir::new().unwrap();
    let raw = write_konect(dir.path(), "raw.txt", 3);
    let run = |sub: &str| {
        let out_dir = dir.path().join(sub);
        let out = tlpss(&[
            "evaluate",
            "--dataset",
            s(&raw),
            "--p",
            "2",
            "--q",
            "0.5",
            "--top-l",
            "20",
            "--seed",
            "9",
            "--out-dir",
            s(&out_dir),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value =
            serde_json::from_slice(&fs::read(out_dir.join("report.json")).unwrap()).unwrap();
        v
    };
    let a = run("a");
    let b = run("b");
    assert_eq!(a["reports"], b["reports"]);
    assert_eq!(a["input_sha256"], b["input_sha256"]);
    assert_eq!(a["input_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(a["config"]["p"], 2.0);
    assert_eq!(a["config"]["seed"], 9);
    assert_eq!(a["reports"].as_array().unwrap().len(), 7);

    let csv = fs::read_to_string(dir.path().join("a/results.csv")).unwrap();
    assert!(csv.starts_with("# config: {"));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 8);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = TempDir::new().unwrap();
    let raw = write_konect(dir.path(), "raw.txt", 4);
    let cfg = dir.path().join("exp.toml");
    fs::write(
        &cfg,
        format!(
            "dataset = {:?}\np = 4.0\nq = 2.0\nmethods = [\"TLPSS\", \"RA_ASF\"]\ntop_l = 10\n",
            s(&raw)
        ),
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = tlpss(&[
        "evaluate",
        "--config",
        s(&cfg),
        "--q",
        "3",
        "--out-dir",
        s(&out_dir),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["p"], 4.0);
    assert_eq!(v["config"]["q"], 3.0);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);

    fs::write(&cfg, "bogus_key = 1\n").unwrap();
    assert_eq!(code(&tlpss(&["evaluate", "--config", s(&cfg)])), 2);
}

#[test]
fn sweep_writes_tidy_csv() {
    let dir = TempDir::new().unwrap();
    let raw = write_konect(dir.path(), "raw.txt", 5);
    let out_dir = dir.path().join("sweep");
    let out = tlpss(&[
        "sweep",
        "--dataset",
        s(&raw),
        "--param",
        "q",
        "--values",
        "0:10:1",
        "--format",
        "csv",
        "--out-dir",
        s(&out_dir),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let tidy = fs::read_to_string(out_dir.join("sweep_q.csv")).unwrap();
    let rows: Vec<&str> = tidy.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "method,param,value,auc,precision");
    assert_eq!(rows.len(), 1 + 11 * 7);
    assert!(rows.iter().any(|r| r.starts_with("TLPSS,q,10,")));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim_end(),
        tidy.trim_end()
    );

    let exp = tlpss(&[
        "sweep",
        "--dataset",
        s(&raw),
        "--param",
        "p",
        "--values",
        "1,2",
        "--decay",
        "exp",
    ]);
    assert_eq!(code(&exp), 2);
}

#[test]
fn score_exports_tables_and_matrices() {
    let dir = TempDir::new().unwrap();
    let raw = write_konect(dir.path(), "raw.txt", 6);
    let out_dir = dir.path().join("scores");
    let out = tlpss(&[
        "score",
        "--dataset",
        s(&raw),
        "--method",
        "tlpss",
        "--method",
        "cn",
        "--dump-matrices",
        "--out-dir",
        s(&out_dir),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for f in [
        "scores_TLPSS.tsv",
        "scores_TLPSS.json",
        "scores_CN_ASF.tsv",
        "adjacency.tsv",
        "latent.tsv",
    ] {
        assert!(out_dir.join(f).is_file(), "{f}");
    }
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let pairs = summary["pairs"].as_u64().unwrap() as usize;
    let tsv = fs::read_to_string(out_dir.join("scores_CN_ASF.tsv")).unwrap();
    assert_eq!(tsv.lines().count(), pairs);
    assert!(!fs::read_to_string(out_dir.join("latent.tsv"))
        .unwrap()
        .is_empty());
}

#[test]
fn negative_timestamps_are_shifted_not_rejected() {
    let dir = TempDir::new().unwrap();
    let raw = dir.path().join("neg.txt");
    let mut text = String::new();
    for t in 0..60i64 {
        text.push_str(&format!("{} {} 1 {}\n", t % 9, (t * 5 + 2) % 11, t - 30));
    }
    fs::write(&raw, text).unwrap();
    let out_dir = dir.path().join("o");
    let out = tlpss(&["evaluate", "--dataset", s(&raw), "--out-dir", s(&out_dir)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 7);
}
