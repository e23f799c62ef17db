//! End-to-end acceptance suite: runs every verification check at its
//! stated tolerance, printing one pass/fail line per criterion, and
//! exercises byte-level determinism through the real binary.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use aqs_core::demo;

const ACCEPTANCE_SEED: u64 = 2718;

#[test]
fn acceptance_criteria() {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let results = demo::run_all(ACCEPTANCE_SEED, dir.path());
    let total = start.elapsed().as_secs_f64();

    for (index, r) in results.iter().enumerate() {
        println!("criterion {}: {r}", index + 1);
    }
    println!("total: {total:.2}s");

    assert_eq!(results.len(), 9, "expected all nine checks to run");
    for r in &results {
        assert!(r.passed, "criterion `{}` failed: {}", r.name, r.detail);
    }

    let budget = |name: &str| -> f64 {
        results
            .iter()
            .find(|r| r.name == name)
            .unwrap_or_else(|| panic!("missing check `{name}`"))
            .seconds
    };
    assert!(budget("algebra") < 5.0, "algebra suite exceeded 5 s");
    assert!(budget("order-effect") < 30.0, "order-effect suite exceeded 30 s");
    assert!(budget("interference") < 10.0, "interference suite exceeded 10 s");
    assert!(total < 60.0, "full suite exceeded 60 s ({total:.1}s)");

    // The order-effect reproduction must leave the scatter artifact behind.
    assert!(dir.path().join("pca_scatter.csv").exists());
}

fn run_binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_aqslab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn artifact_bytes(dir: &std::path::Path) -> BTreeMap<String, Vec<u8>> {
    let mut map = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        if entry.path().is_file() {
            map.insert(
                entry.file_name().to_string_lossy().into_owned(),
                std::fs::read(entry.path()).unwrap(),
            );
        }
    }
    map
}

#[test]
fn cli_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let out_str = out.to_str().unwrap();

    let first = run_binary(&[
        "order-test",
        "--synthesize",
        "--seed",
        "99",
        "--out-dir",
        out_str,
        "--modes",
        "2",
        "--cutoff",
        "1",
        "--runs",
        "40",
        "--permutations",
        "500",
    ]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let before = artifact_bytes(&out);
    assert!(before.contains_key("order_effect.json"));
    assert!(before.contains_key("pca_scatter.csv"));
    assert!(before.contains_key("config.json"));

    let second = run_binary(&[
        "order-test",
        "--synthesize",
        "--seed",
        "99",
        "--out-dir",
        out_str,
        "--modes",
        "2",
        "--cutoff",
        "1",
        "--runs",
        "40",
        "--permutations",
        "500",
    ]);
    assert!(second.status.success());
    let after = artifact_bytes(&out);

    assert_eq!(before, after, "rerun artifacts must be byte-identical");
}
