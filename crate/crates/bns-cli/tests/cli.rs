//! End-to-end checks of the `bns` binary.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

fn bns() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bns"))
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn unknot_integral_json() {
    let out = bns().args(["--pd", "unknot", "--integral", "--json"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["s_rational"], 0);
    assert_eq!(v["graded_length"], 0);
}

#[test]
fn mirror_reports_both() {
    let out = bns()
        .args([
            "--pd",
            "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
            "--field",
            "0",
            "--mirror",
            "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["s_field"]["0"], -2);
    assert_eq!(lines[1]["s_field"]["0"], 2);
}

#[test]
fn batch_matches_reference_column() {
    let reference: BTreeMap<String, i64> =
        std::fs::read_to_string(data("knots9_s_reference.csv"))
            .unwrap()
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|l| {
                let (n, s) = l.split_once(',').unwrap();
                (n.to_string(), s.trim().parse().unwrap())
            })
            .collect();
    let out = bns()
        .args(["--batch", &data("knots9.csv"), "--field", "0", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let mut seen = 0;
    for line in String::from_utf8(out.stdout).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let name = v["name"].as_str().unwrap();
        assert_eq!(v["status"], "ok", "{name}");
        assert_eq!(v["s_field"]["0"].as_i64().unwrap(), reference[name], "{name}");
        seen += 1;
    }
    assert_eq!(seen, reference.len());
}

#[test]
fn parse_errors_do_not_abort_batch() {
    let dir = std::env::temp_dir().join(format!("bns-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.csv");
    std::fs::write(&file, "good,unknot\nbad,X(1,2,3)\nalso_good,dt:4 6 2\n").unwrap();
    let out = bns()
        .args(["--batch", file.to_str().unwrap(), "--integral", "--json"])
        .output()
        .unwrap();
    // Exit code 1 because one entry failed, but all three are reported.
    assert_eq!(out.status.code(), Some(1));
    let statuses: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["status"].as_str().unwrap().to_string()
        })
        .collect();
    assert_eq!(statuses, ["ok", "error", "ok"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn timeout_status() {
    let out = bns()
        .args([
            "--pd",
            "X(1,19,2,18) X(19,1,20,28) X(20,13,21,14) X(12,17,13,18) X(16,21,17,22) \
             X(5,15,6,14) X(15,5,16,4) X(6,27,7,28) X(2,7,3,8) X(26,3,27,4) \
             X(25,23,26,22) X(11,9,12,8) X(23,10,24,11) X(9,24,10,25)",
            "--integral",
            "--timeout-secs",
            "0",
            "--json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "timeout");
}
