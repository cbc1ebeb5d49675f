//! The `caecc` binary end to end, through files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn caecc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caecc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = caecc(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

#[test]
fn payload_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (payload, word, back) = (
        path(dir.path(), "p.bin"),
        path(dir.path(), "x.txt"),
        path(dir.path(), "q.bin"),
    );
    // 0b1010101 as seven bits, zero-padded to one byte.
    fs::write(&payload, [0b1010_1010]).unwrap();
    ok(&[
        "encode", "--m", "3", "--n", "5", "--w", "2", "--t", "1", "--in", &payload, "--out", &word,
    ]);
    let text = fs::read_to_string(&word).unwrap();
    assert!(text.starts_with("#caecc-word m=3 n=5 w=2 variant=uniform t=1 e=1\n"));
    assert_eq!(text.lines().count(), 4);

    ok(&["decode", "--in", &word, "--out", &back]);
    assert_eq!(fs::read(&back).unwrap(), fs::read(&payload).unwrap());
    let header: Value =
        serde_json::from_str(&fs::read_to_string(format!("{back}.json")).unwrap()).unwrap();
    assert_eq!(header["payload_bits"], 7);

    // The sidecar alone supplies the parameters on re-encoding.
    let again = path(dir.path(), "y.txt");
    ok(&["encode", "--in", &back, "--out", &again]);
    assert_eq!(fs::read(&again).unwrap(), fs::read(&word).unwrap());
}

#[test]
fn single_deficient_row_is_corrected() {
    let dir = tempfile::tempdir().unwrap();
    let (payload, word) = (path(dir.path(), "p.bin"), path(dir.path(), "x.txt"));
    fs::write(&payload, [0b0110_0110]).unwrap();
    ok(&[
        "encode", "--m", "3", "--n", "5", "--w", "2", "--t", "1", "--in", &payload, "--out", &word,
    ]);
    let clean = fs::read_to_string(&word).unwrap();
    let damaged: String = clean
        .lines()
        .enumerate()
        .map(|(i, line)| {
            if i == 2 {
                format!("{}\n", line.replacen('1', "0", 1))
            } else {
                format!("{line}\n")
            }
        })
        .collect();
    let received = path(dir.path(), "y.txt");
    fs::write(&received, &damaged).unwrap();
    assert_eq!(ok(&["correct", "--in", &received]), clean);
}

#[test]
fn two_deficient_rows_exceed_one_erasure() {
    let dir = tempfile::tempdir().unwrap();
    let word = path(dir.path(), "y.txt");
    fs::write(
        &word,
        "#caecc-word m=3 n=5 w=2 variant=uniform t=1 e=1\n01000\n10000\n00011\n",
    )
    .unwrap();
    let out = caecc(&["decode", "--in", &word, "--out", &path(dir.path(), "q.bin")]);
    assert_eq!(out.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "TOO_MANY_ERASURES");
}

#[test]
fn structured_errors() {
    let out = caecc(&["params", "--m", "30", "--n", "24", "--w", "10", "--t", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "M_EXCEEDS_P");

    let out = caecc(&[
        "simulate", "--m", "3", "--n", "5", "--w", "2", "--t", "1", "--trials", "5",
    ]);
    assert_eq!(out.status.code(), Some(2), "seed is mandatory");

    let dir = tempfile::tempdir().unwrap();
    let word = path(dir.path(), "y.txt");
    fs::write(
        &word,
        "#caecc-word m=3 n=5 w=2 variant=uniform t=1 e=1\n01010\n",
    )
    .unwrap();
    let out = caecc(&["correct", "--in", &word, "--m", "4"]);
    assert_eq!(out.status.code(), Some(7));
}

#[test]
fn params_for_the_sixteen_shortmer_alphabet() {
    let report: Value = serde_json::from_str(&ok(&[
        "params", "--m", "4", "--n", "16", "--w", "5", "--t", "1", "--e", "1",
    ]))
    .unwrap();
    assert_eq!(report["p"], 17);
    assert_eq!(report["payload_bits"], Value::Null);
    assert_eq!(
        report["payload_bits_unavailable"],
        "ENCODER_REQUIRES_PRIME_N"
    );

    let report: Value = serde_json::from_str(&ok(&[
        "params", "--m", "4", "--n", "17", "--w", "5", "--t", "1", "--size",
    ]))
    .unwrap();
    // C(17,5) = 6188: 12 bits per information row, 8 per coset row.
    assert_eq!(report["payload_bits"], 3 * 12 + 8);
    assert_eq!(
        report["code_size"],
        (364u64.pow(4) * 17u64.pow(3)).to_string()
    );
}

#[test]
fn simulate_is_seed_deterministic() {
    let args = [
        "simulate", "--m", "4", "--n", "17", "--w", "5", "--t", "1", "--mode", "reads", "--reads",
        "5,10", "--trials", "3000", "--seed", "11",
    ];
    let first = ok(&args);
    assert_eq!(ok(&args), first);
    let mut other = args;
    other[16] = "12";
    assert_ne!(ok(&other), first);

    let pattern = ok(&[
        "simulate", "--m", "3", "--n", "5", "--w", "2", "--t", "1", "--trials", "500", "--seed",
        "1", "--format", "csv",
    ]);
    let row: Vec<&str> = pattern.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[11], "500", "all pattern-mode trials succeed");
}

#[test]
fn reads_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (word, reads) = (path(dir.path(), "x.txt"), path(dir.path(), "r.tsv"));
    fs::write(&word, "00111\n11100\n").unwrap();
    ok(&[
        "reads", "sample", "--in", &word, "--reads", "40", "--seed", "3", "--out", &reads,
    ]);
    let merged = ok(&["reads", "aggregate", "--in", &reads]);
    assert_eq!(merged, "#caecc-word m=2 n=5 w=3\n00111\n11100\n");
}

#[test]
fn bounds_grid_skips_invalid_points() {
    let csv = ok(&[
        "bounds", "--m", "17,30", "--n", "17", "--w", "9", "--t", "2", "--e", "2",
    ]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("status,reason,m,n,w,t,e,p"));
    assert!(lines[1].starts_with("ok,,17,17,9,2,2,17,"));
    assert!(lines[2].starts_with("skipped,M_EXCEEDS_P,30,17,9,2,2"));
}

#[test]
fn stats_outputs() {
    let grid = ok(&[
        "stats", "grid", "--w", "4", "--reads", "10", "--m", "10", "--t", "0..=1", "--e", "1..2",
    ]);
    assert_eq!(grid.lines().next(), Some("t,e,probability"));
    assert_eq!(grid.lines().count(), 5);
    let curves = ok(&["stats", "curves", "--w", "5", "--reads", "1,5,10,20,25"]);
    assert_eq!(curves.lines().count(), 1 + 5 * 5);
    assert!(curves.contains("\n5,1,4,1.000000\n"));
    let dist = ok(&["stats", "dist", "--w", "4", "--reads", "10"]);
    assert!(dist.contains("\n4,10,0,0.780602\n"));
}

#[test]
fn verify_small_instances() {
    for args in [
        &[
            "verify", "--m", "2", "--n", "5", "--w", "2", "--t", "1", "--e", "1",
        ][..],
        &[
            "verify", "--m", "2", "--n", "7", "--w", "3", "--t", "1", "--e", "2",
        ][..],
        &[
            "verify",
            "--m",
            "3",
            "--n",
            "5",
            "--w",
            "2",
            "--variant",
            "two-tier",
            "--t1",
            "1",
            "--t2",
            "1",
        ][..],
    ] {
        let text = ok(args);
        assert!(!text.contains("FAIL"), "{text}");
        assert!(
            text.lines().filter(|l| l.starts_with("PASS")).count() >= 5,
            "{text}"
        );
    }
}
