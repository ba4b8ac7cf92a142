//! End-to-end runs of the binary: the full verification command, report
//! determinism, config-file merging, and failure exit codes.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

fn qergo() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qergo"))
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut entries: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    entries.sort();
    entries
}

#[test]
fn criterion_10_full_suite_deterministic() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let out = qergo()
        .args(["all", "--seed", "7", "--out"])
        .arg(dir_a.path())
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "stdout:\n{stdout}");
    // one pass line per criterion
    for id in 1..=9 {
        assert!(
            stdout.contains(&format!("PASS criterion  {id} ")) ||
            stdout.contains(&format!("PASS criterion {id:>2} ")),
            "missing criterion {id} line in:\n{stdout}"
        );
    }
    assert!(
        elapsed < Duration::from_secs(300),
        "full suite took {elapsed:.1?}"
    );
    println!("ACCEPTANCE 10 PASS  full suite via CLI  [{elapsed:.2?} < 300s]");

    // identical config + seed → identical report bytes
    let out_b = qergo()
        .args(["all", "--seed", "7", "--out"])
        .arg(dir_b.path())
        .output()
        .unwrap();
    assert!(out_b.status.success());
    let a = read_dir_sorted(dir_a.path());
    let b = read_dir_sorted(dir_b.path());
    assert_eq!(a.len(), b.len());
    for ((name_a, bytes_a), (name_b, bytes_b)) in a.iter().zip(b.iter()) {
        assert_eq!(name_a, name_b);
        assert_eq!(bytes_a, bytes_b, "report {name_a} differs between runs");
    }
}

#[test]
fn subcommands_emit_reports_and_exit_clean() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["tl", "verify", "--n", "2", "--k", "4"],
        vec!["tl", "dim", "--n", "2", "--k-max", "4"],
        vec!["markov", "--n", "3", "--k", "3"],
        vec!["factor-type", "--family", "uhf", "--q", "1/3,2/3"],
        vec!["modular", "spectrum", "--q", "1/3,2/3", "--k-max", "2"],
        vec!["magic", "verify", "--grid", "10"],
        vec!["magic", "rank", "--max-len", "3"],
        vec!["quotient", "check", "--pair", "s3:a3"],
        vec!["cuntz", "eval", "--n", "2", "--q", "1/2,1/2", "--word", "S1 S1*"],
    ] {
        let out = qergo().args(&args).arg("--out").arg(dir.path()).output().unwrap();
        assert!(
            out.status.success(),
            "{args:?} failed:\n{}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
    }
    // every run left a json + csv pair
    let names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert!(names.iter().filter(|n| n.ends_with(".json")).count() >= 9);
    assert!(names.iter().filter(|n| n.ends_with(".csv")).count() >= 9);
}

#[test]
fn markov_table_has_exact_ratio_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = qergo()
        .args(["markov", "--n", "2", "--k", "5", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv_path = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.to_string_lossy().ends_with("words.csv"))
        .expect("word table written");
    let table = fs::read_to_string(csv_path).unwrap();
    let mut rows = 0;
    for line in table.lines().skip(1) {
        assert!(line.contains(",1/4,"), "ratio column should be 1/4: {line}");
        rows += 1;
    }
    assert_eq!(rows, 14); // C_4 normal-form words at k = 5
}

#[test]
fn swap_unitary_fails_invariance_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let swap = dir.path().join("swap.txt");
    fs::write(&swap, "2 2\n(0,0) (1,0)\n(1,0) (0,0)\n").unwrap();
    let out = qergo()
        .args(["cuntz", "invariance", "--n", "2", "--q", "1/3,2/3", "--unitary-file"])
        .arg(&swap)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "negative control must exit 1");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL"));
}

#[test]
fn bad_input_exits_with_usage_error() {
    let out = qergo()
        .args(["factor-type", "--family", "nonsense", "--q", "1/2,1/2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = qergo()
        .args(["quotient", "check", "--pair", "s9:s8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# markov defaults\nn = 3\nk = 3\n").unwrap();
    let out = qergo()
        .args(["markov", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let json_path = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.to_string_lossy().ends_with(".json"))
        .unwrap();
    let record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(json_path).unwrap()).unwrap();
    assert_eq!(record["config"]["n"], "3");
    assert_eq!(record["config"]["k"], "3");
    // explicit flags win over the config file
    let out = qergo()
        .args(["markov", "--k", "4", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("(3,4)"), "{stdout}");
}

#[test]
fn out_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = qergo()
        .args(["tl", "verify", "--n", "2", "--k", "2"])
        .env("QERGO_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(fs::read_dir(dir.path()).unwrap().count() >= 2);
}

#[test]
fn group_table_file_ingestion() {
    let dir = tempfile::tempdir().unwrap();
    // Z4 table with subgroup {0, 2}
    let table = dir.path().join("z4.txt");
    fs::write(&table, "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n").unwrap();
    let out = qergo()
        .args(["quotient", "check", "--group-file"])
        .arg(&table)
        .args(["--subgroup", "0,2", "--group-name", "Z4", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("dim C(H\\G) = 2"), "{stdout}");
}
