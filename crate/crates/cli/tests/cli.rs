//! End-to-end tests driving the compiled `halfhex` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};
use std::str::FromStr;
use std::time::Instant;

use num::BigRational;

fn halfhex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halfhex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn count_half_hexagons() {
    let out = halfhex(&["count", "--halfhex", "2"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("count = 8"));
    assert!(text.contains("predicted = 8"));
    assert!(text.contains("match = true"));

    let out = halfhex(&["count", "--halfhex", "1"]);
    assert!(stdout(&out).contains("count = 2"));
}

#[test]
fn count_general_ensemble() {
    let out = halfhex(&["count", "--n", "2", "--steps", "2", "--ends", "2,3"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("count = 3"));
}

#[test]
fn count_json_record() {
    let out = halfhex(&["count", "--halfhex", "2", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("json line");
    assert_eq!(parsed["value"], "8");
    assert_eq!(parsed["match"], true);
    assert_eq!(parsed["spec"]["ends"], serde_json::json!([2, 4]));
}

#[test]
fn invert_prints_exact_eighths() {
    let out = halfhex(&["invert", "--halfhex", "2"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("3/8"));
    assert!(text.contains("-1/8"));
}

#[test]
fn kernel_value_single_walker() {
    let out = halfhex(&["kernel", "--halfhex", "1", "1", "1", "1", "1"]);
    assert!(stdout(&out).contains("= 1/2"));
}

#[test]
fn correlate_matches_enumeration_value() {
    // six of the eight order-2 configurations occupy site (1, 1)
    let out = halfhex(&["correlate", "--halfhex", "2", "--points", "1:1"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("correlation = 3/4"));
}

#[test]
fn correlate_rejects_bad_queries() {
    let dup = halfhex(&["correlate", "--halfhex", "2", "--points", "1:1,1:1"]);
    assert_eq!(exit_code(&dup), 2);
    let boundary = halfhex(&["correlate", "--halfhex", "2", "--points", "0:1"]);
    assert_eq!(exit_code(&boundary), 2);
    let garbled = halfhex(&["correlate", "--halfhex", "2", "--points", "11"]);
    assert_eq!(exit_code(&garbled), 2);
}

#[test]
fn rationals_round_trip_through_json() {
    for points in ["1:1", "1:1,2:3", "1:2,2:2,2:4"] {
        let json_out = halfhex(&[
            "correlate", "--halfhex", "3", "--points", points, "--format", "json",
        ]);
        let record: serde_json::Value =
            serde_json::from_str(stdout(&json_out).trim()).expect("json line");
        let text_out = halfhex(&["correlate", "--halfhex", "3", "--points", points]);
        let text = stdout(&text_out);
        let text_value = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("correlation = "))
            .expect("text value");
        // both encodings parse to the same exact rational
        let a = BigRational::from_str(record["value"].as_str().unwrap()).unwrap();
        let b = BigRational::from_str(text_value).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn enumerate_golden_records() {
    let out = halfhex(&["enumerate", "--halfhex", "1"]);
    assert_eq!(stdout(&out), "1\n1\n2\n\n1\n2\n2\n");
}

#[test]
fn enumerate_cap_exit_code() {
    let out = halfhex(&["enumerate", "--halfhex", "3", "--cap", "10"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn invalid_inputs_exit_two() {
    assert_eq!(exit_code(&halfhex(&["count", "--steps", "2", "--ends", "3,2"])), 2);
    assert_eq!(exit_code(&halfhex(&["count"])), 2);
    assert_eq!(
        exit_code(&halfhex(&["count", "--n", "3", "--steps", "2", "--ends", "2,3"])),
        2
    );
    // clap conflict between --halfhex and explicit endpoints
    assert_eq!(
        exit_code(&halfhex(&["count", "--halfhex", "2", "--ends", "2,4", "--steps", "3"])),
        2
    );
    // svg makes no sense for scalar reports
    assert_eq!(
        exit_code(&halfhex(&["count", "--halfhex", "2", "--format", "svg"])),
        2
    );
}

#[test]
fn same_seed_gives_byte_identical_output() {
    let a = halfhex(&["sample", "--halfhex", "6", "--seed", "11"]);
    let b = halfhex(&["sample", "--halfhex", "6", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let c = halfhex(&["sample", "--halfhex", "6", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn sample_svg_order_twenty() {
    let out = halfhex(&[
        "sample", "--halfhex", "20", "--seed", "7", "--format", "svg",
    ]);
    assert_eq!(exit_code(&out), 0);
    let svg = stdout(&out);
    assert_eq!(svg.matches("<polygon").count(), 630);
}

#[test]
fn sample_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiling.svg");
    let out = halfhex(&[
        "sample",
        "--halfhex",
        "3",
        "--format",
        "svg",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let svg = std::fs::read_to_string(path).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 18);
}

#[test]
fn render_reads_sample_records() {
    let sample = halfhex(&["sample", "--halfhex", "2", "--seed", "5"]);
    let record = stdout(&sample);

    let mut child = Command::new(env!("CARGO_BIN_EXE_halfhex"))
        .args(["render", "--mode", "paths", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn render");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(record.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(exit_code(&out), 0);
    let ascii = stdout(&out);
    // one text row per time slice, each holding one 'o' per walker
    assert_eq!(ascii.lines().count(), 4);
    assert!(ascii.lines().all(|l| l.matches('o').count() == 2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.txt");
    std::fs::write(&path, &record).unwrap();
    let svg = halfhex(&[
        "render",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "svg",
    ]);
    assert_eq!(stdout(&svg).matches("<polygon").count(), 9);
    let bad = halfhex(&[
        "render",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&bad), 2);
}

#[test]
fn verify_quick_mode_is_fast_and_green() {
    let start = Instant::now();
    let out = halfhex(&["verify", "--n-max", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert!(
        start.elapsed().as_secs_f64() < 5.0,
        "quick verify took {:?}",
        start.elapsed()
    );
    let text = stdout(&out);
    assert_eq!(text.matches(": PASS").count(), 5);
    assert!(text.contains("all suites passed"));
}

#[test]
fn verify_self_test_catches_injected_fault() {
    let out = halfhex(&["verify", "--self-test", "--n-max", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("caught"));
}

#[test]
fn verify_json_records() {
    let out = halfhex(&["verify", "--n-max", "2", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let record: serde_json::Value = serde_json::from_str(line).expect("json per line");
        assert_eq!(record["pass"], true);
    }
}
