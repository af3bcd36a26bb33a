//! Wiring and exit codes of the `bec-ledger` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bec-ledger"));
    cmd.env_remove("BEC_LEDGER_OUT");
    cmd
}

fn run(args: &[&str], extra: &[(&str, PathBuf)]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    for (flag, path) in extra {
        cmd.arg(flag).arg(path);
    }
    cmd.output().expect("binary runs")
}

fn full_inputs(out: &Path) -> Vec<(&'static str, PathBuf)> {
    vec![
        ("--balance", fixture("balance_2000_2013.csv")),
        ("--noncommercial", fixture("noncommercial_2000_2013.csv")),
        ("--out", out.to_path_buf()),
    ]
}

fn read_ledger(dir: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(dir.join("ledger.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn hundredths(s: &str) -> i64 {
    let (int, frac) = s.split_once('.').unwrap();
    int.parse::<i64>().unwrap() * 100 + frac.parse::<i64>().unwrap()
}

#[test]
fn compute_writes_fourteen_rows() {
    let out = tempfile::tempdir().unwrap();
    let o = run(
        &["compute", "--policy", "eq3-default"],
        &full_inputs(out.path()),
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let rows = read_ledger(out.path());
    assert_eq!(rows.len(), 14);
    assert_eq!(rows[13][0], "2013");
    assert_eq!(rows[13][5], "676.06");
    assert!(out.path().join("plot_total.dat").exists());
}

#[test]
fn legacy_preset_moves_only_residential() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run(
        &["compute", "--policy", "eq3-default"],
        &full_inputs(a.path()),
    );
    run(
        &["compute", "--policy", "eq2-legacy"],
        &full_inputs(b.path()),
    );
    let sheet_text = std::fs::read_to_string(fixture("balance_2000_2013.csv")).unwrap();
    for (ra, rb) in read_ledger(a.path()).iter().zip(read_ledger(b.path())) {
        let year = &ra[0];
        assert_eq!(ra[2..5], rb[2..5], "{year}: PE/NCE/CH must not move");
        // diesel burned in households that year
        let drc: i64 = sheet_text
            .lines()
            .filter(|l| l.starts_with(&format!("{year},residential-")) && l.contains(",diesel,"))
            .map(|l| hundredths(l.split(',').nth(3).unwrap()))
            .sum();
        let delta = hundredths(&rb[1]) - hundredths(&ra[1]);
        // 0.05 * DRC, up to one hundredth of rounding
        assert!(
            (delta * 100 - 5 * drc).abs() <= 100,
            "{year}: {delta} vs {drc}"
        );
    }
}

#[test]
fn missing_input_names_the_path() {
    let out = tempfile::tempdir().unwrap();
    let o = run(
        &["compute"],
        &[
            ("--balance", PathBuf::from("/nonexistent/balance.csv")),
            ("--out", out.path().to_path_buf()),
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("/nonexistent/balance.csv"), "{err}");
    assert!(err.starts_with("error[InputPathMissing]"), "{err}");
    assert!(!out.path().join("ledger.csv").exists());
}

#[test]
fn malformed_input_is_exit_two_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(
        &bad,
        "year,sector,fuel,quantity,unit\n2000,wrhr,coal,1.00,Mtce\n2000,moon-base,coal,2,Mtce\n",
    )
    .unwrap();
    let o = run(&["ingest-check"], &[("--balance", bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("UnknownSector") && err.contains("line 3"),
        "{err}"
    );
}

#[test]
fn audit_exit_codes() {
    let out = tempfile::tempdir().unwrap();
    let heat = fixture("heat_2013.csv");
    let ok = run(
        &["audit", "--policy", "eq3-default", "--tolerance", "0.005"],
        &[
            ("--balance", heat.clone()),
            ("--out", out.path().to_path_buf()),
        ],
    );
    assert_eq!(ok.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.path().join("audit.csv")).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")), "{csv}");

    let naive = run(
        &["audit", "--policy", "naive-heating-added"],
        &[("--balance", heat), ("--out", out.path().to_path_buf())],
    );
    assert_eq!(naive.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&naive.stdout).contains("double count"));

    // 2000 carries no heat transformation rows
    let missing = run(
        &["audit", "--years", "2000"],
        &[
            ("--balance", fixture("balance_2000_2013.csv")),
            ("--out", out.path().to_path_buf()),
        ],
    );
    assert_eq!(missing.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("error[MissingHeatData]"));
}

#[test]
fn compare_same_policy_is_all_zero() {
    let out = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "compare",
            "--policy",
            "eq3-default",
            "--policy",
            "eq3-default",
        ],
        &full_inputs(out.path()),
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.path().join("compare.csv")).unwrap();
    assert_eq!(csv.lines().count(), 15);
    for line in csv.lines().skip(1) {
        assert!(line.split(',').skip(3).all(|v| v == "0.00"), "{line}");
    }
}

#[test]
fn compare_wang_public_delta_2013() {
    let out = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "compare",
            "--policy",
            "eq3-default",
            "--policy",
            "wang2007",
            "--years",
            "2013",
        ],
        &full_inputs(out.path()),
    );
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.path().join("compare.csv")).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    // 0.05 * 30.01 + 0.65 * 22.92 = 16.3985
    assert!((hundredths(row[5]) - 1640).abs() <= 2, "{row:?}");
}

#[test]
fn compare_needs_two_policies() {
    let out = tempfile::tempdir().unwrap();
    let o = run(
        &["compare", "--policy", "eq3-default"],
        &full_inputs(out.path()),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_policy_is_input_error() {
    let out = tempfile::tempdir().unwrap();
    let o = run(
        &["compute", "--policy", "no-such-preset"],
        &full_inputs(out.path()),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-preset"));
}

#[test]
fn policy_file_matches_preset() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("legacy.policy");
    std::fs::write(
        &file,
        "preset = eq3-default\nresidential_diesel_deduction = 0.95\n",
    )
    .unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    run(&["compute", "--policy", "eq2-legacy"], &full_inputs(&a));
    let mut cmd = bin();
    cmd.arg("compute").arg("--policy").arg(&file);
    for (flag, path) in full_inputs(&b) {
        cmd.arg(flag).arg(path);
    }
    assert_eq!(cmd.output().unwrap().status.code(), Some(0));
    assert_eq!(read_ledger(&a), read_ledger(&b));
}

#[test]
fn report_is_deterministic_and_complete() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let o = run(&["report"], &full_inputs(dir.path()));
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let names = [
        "ledger.csv",
        "shares.csv",
        "public_detail.csv",
        "noncommercial.csv",
        "audit.csv",
        "plot_residential.dat",
        "plot_public.dat",
        "plot_total.dat",
        "plot_shares.dat",
        "plot_share-of-final.dat",
        "plot_noncommercial.dat",
    ];
    for name in names {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs between runs");
    }
    let total = std::fs::read_to_string(a.path().join("plot_total.dat")).unwrap();
    assert!(total.starts_with('#'));
    assert_eq!(total.lines().last(), Some("2013 676.06 753.09"));
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .env("BEC_LEDGER_OUT", dir.path())
        .args(["compute", "--years", "2010..2013", "--balance"])
        .arg(fixture("balance_2000_2013.csv"))
        .arg("--noncommercial")
        .arg(fixture("noncommercial_2000_2013.csv"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_ledger(dir.path()).len(), 4);
}
