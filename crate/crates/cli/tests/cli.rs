//! End-to-end runs of the binary: output, exit codes, file handling.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-lrc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const C44_FLAGS: [&str; 15] = [
    "construct", "--family", "C44", "--q", "19", "--n", "18", "--t", "1", "--b", "1", "--m", "5", "--tail", "8",
];

fn c44(extra: &[&str]) -> Output {
    let mut args = C44_FLAGS.to_vec();
    args.extend(["--delta", "4"]);
    args.extend(extra);
    cli(&args)
}

fn grid(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("grids").join(name).display().to_string()
}

#[test]
fn construct_optimal_exits_zero() {
    let o = c44(&["--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("[18,8,8]"), "{text}");
    assert!(text.contains("(7,4)"), "{text}");
    assert!(text.contains("optimal    yes"), "{text}");
    assert!(text.contains("does not divide"), "{text}");
}

#[test]
fn construct_not_optimal_exits_two() {
    let o = cli(&[
        "construct", "--family", "C44", "--q", "19", "--n", "18", "--t", "1", "--m", "1", "--tail", "8", "--delta", "3",
        "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert_eq!(stdout(&o), "family,q,n,r,delta,k,d,optimal,divides\nC44,19,18,14,3,14,4,false,false\n");
}

#[test]
fn construct_reports_violated_clause() {
    let o = cli(&[
        "construct", "--family", "C52", "--case", "1", "--q", "64", "--n", "65", "--r", "2", "--delta", "4", "--i",
        "1", "--ell", "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("0 ≤ i ≤ ⌊(r−1)/2⌋"), "{}", stderr(&o));
}

#[test]
fn parse_failures_exit_one_with_usage() {
    let o = cli(&["construct", "--family", "C44", "--q", "19", "--delta", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Usage"));
    let o = c44(&["--budget", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cli(&["construct", "--family", "C99", "--q", "19", "--n", "18", "--delta", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown family"));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let a = c44(&["--format", "json"]);
    let b = c44(&["--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["claims"]["d"], 8);
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c44.json");
    let o = c44(&["--format", "json", "--output", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let o = cli(&["verify", cert.to_str().unwrap(), "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("agree").count(), 5);

    let text = fs::read_to_string(&cert).unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, text.replacen("\"k\": 8", "\"k\": 9", 2)).unwrap();
    let o = cli(&["verify", bad.to_str().unwrap(), "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("dimension") && l.contains("DISAGREE")));

    fs::write(&bad, "{ not json").unwrap();
    let o = cli(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("malformed certificate"));
}

#[test]
fn selftest_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["selftest", "--format", "pretty", "--write-certificates", dir.path().to_str().unwrap()]);
    assert!(stdout(&o).contains("sweep over 668"));
    let product = dir.path().join("02_binary_product_len31.cert.json");
    let o = cli(&["verify", product.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "agree"));
}

#[test]
fn search_headline_grid() {
    let o = cli(&["search", &grid("headline.toml"), "--format", "csv", "--optimal-only", "--non-divisible"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "family,q,n,r,delta,k,d,optimal,divides\n\
         C44,19,18,9,2,12,6,true,false\n\
         C44,19,18,8,3,10,7,true,false\n\
         C44,19,18,7,4,8,8,true,false\n\
         C56,32,33,22,2,26,7,true,false\n\
         C56,32,33,20,4,22,9,true,false\n\
         C511,16,17,7,3,8,8,true,false\n"
    );
}

#[test]
fn search_empty_and_invalid_grids() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.toml");
    fs::write(&empty, "grid = []\n").unwrap();
    let o = cli(&["search", empty.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "family,q,n,r,delta,k,d,optimal,divides\n");

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[[grid]]\nfamily = \"C44\"\nq = 19\n").unwrap();
    let o = cli(&["search", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid grid"));
}

#[test]
fn corrupted_golden_file_is_named() {
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/golden");
    let dir = tempfile::tempdir().unwrap();
    for e in fs::read_dir(&src).unwrap() {
        let p = e.unwrap().path();
        fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    fs::write(dir.path().join("04_gf19_single_tail_delta3.json"), "{\"name\": ").unwrap();
    let o = cli(&["selftest", "--format", "pretty", "--golden-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("cannot parse 04_gf19_single_tail_delta3.json"), "{}", stdout(&o));
}

#[test]
fn table_lists_every_example() {
    let o = cli(&["table", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 24);
}
