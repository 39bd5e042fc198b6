use std::path::Path;
use std::process::{Command, Output};

use vdw::formats::Report;
use vdw_core::specfun::zeta_real;

fn vdw(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vdw")).args(args).env("VDW_OUTPUT_DIR", dir).output().unwrap()
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn eval_xi_is_symmetric_about_half() {
    let dir = tempfile::tempdir().unwrap();
    let out = vdw(dir.path(), &["eval", "xi", "--grid", "0.3:0.7:5"]);
    assert!(out.status.success());
    let r = rows(&out);
    assert_eq!(r.len(), 5);
    for k in 0..5 {
        let (a, b) = (num(&r[k][1]), num(&r[4 - k][1]));
        assert!((a - b).abs() < 1e-12 * a, "{a} vs {b}");
    }
}

#[test]
fn eval_products_at_zero_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = vdw(dir.path(), &["eval", "cosh-product", "--s", "0"]);
    assert_eq!(num(&rows(&out)[0][1]), 1.0);
    let out = vdw(dir.path(), &["--format", "json", "eval", "sinh-product", "--s", "1.5"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let got = v["rows"][0]["value"].as_f64().unwrap();
    assert!((got - 1.5f64.sinh() / 1.5).abs() < 1e-3, "{got}");
}

#[test]
fn eval_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/tau.csv");
    let out = vdw(dir.path(), &["--out", path.to_str().unwrap(), "eval", "tau", "--grid", "1:6:6"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let vals: Vec<f64> = text.lines().skip(1).map(|l| num(l.split(',').nth(1).unwrap())).collect();
    assert_eq!(vals, [1.0, -24.0, 252.0, -1472.0, 4830.0, -6048.0]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(vdw(dir.path(), &["eval", "nope", "--s", "1"]).status.code(), Some(2));
    assert_eq!(vdw(dir.path(), &["verify", "nope"]).status.code(), Some(2));
    assert_eq!(vdw(dir.path(), &["sample", "nope"]).status.code(), Some(2));
    assert_eq!(vdw(dir.path(), &["eval", "xi", "--grid", "1:2"]).status.code(), Some(2));
    let out = vdw(dir.path(), &["eval", "w-a-density", "--s", "-1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn sample_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = vdw(dir.path(), &["--seed", "7", "--out", p.to_str().unwrap(), "sample", "C1", "--draws", "25000"]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let other = dir.path().join("c.csv");
    vdw(dir.path(), &["--seed", "8", "--out", other.to_str().unwrap(), "sample", "C1", "--draws", "25000"]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&other).unwrap());
    assert_eq!(std::fs::read_to_string(&a).unwrap().lines().count(), 25_001);
}

fn summary(dir: &Path, args: &[&str]) -> serde_json::Value {
    let out = vdw(dir, args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let name = format!("sample-{}.json", args[1]);
    serde_json::from_slice(&std::fs::read(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn polya_sample_is_centred() {
    let dir = tempfile::tempdir().unwrap();
    let s = summary(dir.path(), &["sample", "polya-xi", "--draws", "50000"]);
    let (m, se) = (s["mean"].as_f64().unwrap(), s["mean_se"].as_f64().unwrap());
    assert!(m.abs() < 3.0 * se, "{m} {se}");
}

#[test]
fn subordinator_sample_matches_zeta_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let s = summary(dir.path(), &["sample", "subordinator", "--draws", "50000", "--cf-at", "1"]);
    let t = &s["transforms"][0];
    let (lt, se) = (t["laplace"].as_f64().unwrap(), t["laplace_se"].as_f64().unwrap());
    let target = zeta_real(3.0).unwrap() / zeta_real(2.0).unwrap();
    assert!((lt - target).abs() < 3.0 * se, "{lt} vs {target}");
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = vdw(dir.path(), &["verify", "frullani", "couple:cos-cosh", "frullani"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("2 of 2 passed"), "{stdout}");
    let r: Report = vdw::formats::read_json(&dir.path().join("frullani.json")).unwrap();
    assert!(r.pass && r.max_residual.unwrap() < 1e-9);
    let c: Report = vdw::formats::read_json(&dir.path().join("couple_cos-cosh.json")).unwrap();
    assert!(c.pass && !c.points.is_empty());
}

#[test]
fn list_mentions_every_command_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = vdw(dir.path(), &["list"]);
    let text = String::from_utf8_lossy(&out.stdout);
    for word in ["functions:", "identities:", "samplers:", "couple:xi", "polya-xi", "xi-tau"] {
        assert!(text.contains(word), "{word}");
    }
}
