use std::path::Path;
use std::process::{Command, Output};

use differint::imaging::{decode_pnm, encode_pnm};
use differint::ImageBuffer;

fn differint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_differint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn gray_image(path: &Path) {
    let data = (0..48 * 32)
        .map(|i| (i % 48) as f64 / 47.0 * 0.6 + if (i / 48) % 8 < 4 { 0.3 } else { 0.0 })
        .collect();
    std::fs::write(path, encode_pnm(&ImageBuffer::new(48, 32, 1, data).unwrap())).unwrap();
}

#[test]
fn d1_identity_round_trips_values() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output) = (dir.path().join("f.csv"), dir.path().join("g.csv"));
    let values = [0.25, -1.5, 3.0, 1e-7, 42.125, -0.001];
    let text: String = values.iter().map(|v| format!("{v}\n")).collect();
    std::fs::write(&input, text).unwrap();
    let out = differint(&["d1", "--q", "0", "--input", p(&input), "--output", p(&output)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let got: Vec<f64> = std::fs::read_to_string(&output)
        .unwrap()
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    assert_eq!(got.len(), values.len());
    assert!(got.iter().zip(values).all(|(a, b)| (a - b).abs() <= 1e-12));
}

#[test]
fn d1_header_policy_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output) = (dir.path().join("f.csv"), dir.path().join("g.json"));
    std::fs::write(&input, "value\n1\n2\n3\n4\n").unwrap();
    let args = ["d1", "--q", "1", "--input", p(&input), "--output", p(&output)];
    let out = differint(&args);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);

    let out = differint(&[&args[..], &["--header", "skip"]].concat());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 4);
}

#[test]
fn d2_blur_writes_same_size_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output) = (dir.path().join("in.pgm"), dir.path().join("out.pgm"));
    gray_image(&input);
    let out = differint(&["d2", "--q", "-1.3", "--rescale", "minmax", p(&input), p(&output)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bytes = std::fs::read(&output).unwrap();
    assert!(bytes.starts_with(b"P5"));
    let img = decode_pnm(&bytes).unwrap();
    assert_eq!((img.width(), img.height(), img.channels()), (48, 32, 1));
}

#[test]
fn image_subcommands_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    gray_image(&input);
    let edges = dir.path().join("edges.pgm");
    let emboss = dir.path().join("emboss.pgm");
    assert!(differint(&["edges", p(&input), p(&edges), "--q", "0.55", "--threshold", "0.3"]).status.success());
    assert!(differint(&["emboss", p(&input), p(&emboss), "--theta", "0.6", "--axis", "vertical"]).status.success());
    assert!(decode_pnm(&std::fs::read(edges).unwrap()).is_ok());
    assert!(decode_pnm(&std::fs::read(emboss).unwrap()).is_ok());
}

#[test]
fn eclipse_report_lists_inflections() {
    let out = differint(&["eclipse", "--depth-ratio", "0.1", "--sigma", "0", "--q", "0.5", "--theta", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text
        .lines()
        .find(|l| l.starts_with("detected inflections:"))
        .expect("detection line");
    let idx: Vec<f64> = line.split_whitespace().skip(2).map(|v| v.parse().unwrap()).collect();
    let analytic: Vec<f64> = text
        .lines()
        .find(|l| l.starts_with("analytic inflections:"))
        .unwrap()
        .split_whitespace()
        .skip(2)
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(idx.len(), 2);
    for (a, b) in idx.iter().zip(&analytic) {
        assert!((a - b).abs() <= 2.0, "{a} vs {b}");
    }
}

#[test]
fn eclipse_curve_json_carries_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.json");
    let out = differint(&["eclipse", "--sigma", "0.1", "--seed", "17", "--output", p(&curve)]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&curve).unwrap()).unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 1024);
    assert_eq!(v["metadata"]["noise"]["seed"], 17);
    assert_eq!(v["metadata"]["transit"]["planet_radius"], 0.1);
}

#[test]
fn bench_reports_discrepancy() {
    let out = differint(&["bench", "--n", "512", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["max_relative_discrepancy"].as_f64().unwrap() < 1e-9);
    assert!(v["speedup"].as_f64().unwrap() > 0.0);
}

#[test]
fn error_exit_codes_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    let bad_pgm = dir.path().join("bad.pgm");
    std::fs::write(&bad_pgm, b"P2\n1 1\n255\n0\n").unwrap();
    let out_csv = dir.path().join("o.csv");
    let cases: [(Vec<&str>, i32); 5] = [
        (vec!["d1", "--q", "1", "--nope"], 2),
        (vec!["d1", "--q", "1", "--input", p(&missing), "--output", p(&out_csv)], 3),
        (vec!["d2", "--q", "1", p(&bad_pgm), p(&out_csv)], 4),
        (vec!["eclipse", "--depth-ratio", "1.5"], 5),
        (vec!["d1", "--q", "1", "--mode", "feller", "--theta", "0", "--input", "x", "--output", "y"], 5),
    ];
    for (args, code) in cases {
        let out = differint(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
    }
}

#[test]
fn help_documents_exit_codes_and_defaults() {
    for sub in ["d1", "d2", "edges", "emboss", "eclipse", "bench"] {
        let out = differint(&[sub, "--help"]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("Exit codes"), "{sub}");
        assert!(text.contains("[default:"), "{sub}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    gray_image(&input);
    let mut outputs = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("o{i}.pgm"));
        assert!(differint(&["d2", "--q", "0.7", "--rescale", "overlay", "--gain", "0.5", p(&input), p(&out)])
            .status
            .success());
        outputs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let a = differint(&["eclipse", "--sigma", "0.3", "--seed", "9", "--format", "json"]);
    let b = differint(&["eclipse", "--sigma", "0.3", "--seed", "9", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}
