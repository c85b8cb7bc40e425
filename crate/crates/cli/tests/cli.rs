use std::path::Path;
use std::process::{Command, Output};

fn bellqfi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellqfi")).args(args).output().expect("binary runs")
}

fn run_to_file(dir: &Path, name: &str, args: &[&str]) -> (Output, String) {
    let out = dir.join(name);
    let mut full = args.to_vec();
    full.extend(["--out", out.to_str().unwrap()]);
    let output = bellqfi(&full);
    let text = std::fs::read_to_string(&out).unwrap_or_default();
    (output, text)
}

#[test]
fn ising_sweep_csv_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sweep", "--model", "ising", "--n", "4", "--n", "6", "--steps", "7", "--u-min", "-3"];
    let mut a = args.to_vec();
    a.extend(["--threads", "1"]);
    let mut b = args.to_vec();
    b.extend(["--threads", "3"]);
    let (oa, ta) = run_to_file(dir.path(), "a.csv", &a);
    let (ob, tb) = run_to_file(dir.path(), "b.csv", &b);
    assert!(oa.status.success() && ob.status.success());
    assert_eq!(ta, tb);
    let lines: Vec<&str> = ta.lines().collect();
    assert_eq!(lines[0], "# schema=1");
    assert!(lines[1].starts_with("n,u,qfi,qfi_over_sn,e_full,depth,"));
    assert_eq!(lines.len(), 2 + 14);
    // N-major, u ascending
    assert!(lines[2].starts_with("4,-3.0000000000000000e0,"));
    assert!(lines[8].starts_with("4,0.0000000000000000e0,"));
    assert!(lines[9].starts_with("6,-3.0000000000000000e0,"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"model": "twomode", "n": [12, 30], "u_min": -2.0, "steps": 5}"#).unwrap();
    let (o, text) = run_to_file(dir.path(), "s.csv", &["sweep", "--config", cfg.to_str().unwrap(), "--n", "16"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.starts_with("16,")));
    assert!(rows[0].starts_with("16,-2.0000000000000000e0,"));
}

#[test]
fn derivative_scan_flags_one_onset_per_size() {
    let dir = tempfile::tempdir().unwrap();
    let (o, text) = run_to_file(dir.path(), "d.csv", &["derivative", "--n", "20", "--n", "40", "--steps", "61", "--u-min", "-3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema=1"));
    assert_eq!(lines.next(), Some("n,u,dqfi_d_abs_u,e_full,bell_onset_flag"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 122);
    for n in ["20", "40"] {
        let flagged: Vec<_> = rows.iter().filter(|r| r[0] == n && r[4] == "1").collect();
        assert_eq!(flagged.len(), 1);
        let u: f64 = flagged[0][1].parse().unwrap();
        assert!((-1.5..-0.5).contains(&u), "onset at {u}");
    }
}

#[test]
fn verify_report_is_reproducible_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (o1, r1) = run_to_file(dir.path(), "v1.csv", &["verify", "--seed", "7", "--threads", "1"]);
    let (o2, r2) = run_to_file(dir.path(), "v2.csv", &["verify", "--seed", "7", "--threads", "4"]);
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o2.status.code(), Some(0));
    assert_eq!(r1, r2);
    assert!(r1.lines().skip(3).all(|l| l.split(',').nth(1) == Some("1")));
}

#[test]
fn injected_tolerance_failure_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let (o, report) = run_to_file(dir.path(), "v.csv", &["verify", "--tolerance-scale", "-1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(report.lines().skip(3).all(|l| l.split(',').nth(1) == Some("0")));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(bellqfi(&["sweep"]).status.code(), Some(1), "missing --n");
    assert_eq!(bellqfi(&["sweep", "--n", "4", "--model", "heisenberg"]).status.code(), Some(1));
    assert_eq!(bellqfi(&["sweep", "--n", "40"]).status.code(), Some(1), "Ising size cap");
    assert_eq!(bellqfi(&["sweep", "--n", "4", "--u-min", "0", "--u-max", "-1"]).status.code(), Some(1));
    assert_eq!(bellqfi(&["derivative", "--n", "4", "--steps", "2"]).status.code(), Some(1));
    assert_eq!(bellqfi(&["derivative", "--n", "4", "--u-min", "-1", "--u-max", "1"]).status.code(), Some(1));
    assert_eq!(bellqfi(&["sweep", "--n", "4", "--config", "/no/such/file.json"]).status.code(), Some(1));
    let io = bellqfi(&["sweep", "--n", "4", "--steps", "3", "--out", "/no/such/dir/out.csv"]);
    assert_eq!(io.status.code(), Some(2));
    assert_eq!(bellqfi(&["--help"]).status.code(), Some(0));
}

#[test]
fn stdout_when_no_out_flag() {
    let o = bellqfi(&["sweep", "--model", "twomode", "--n", "8", "--steps", "3", "--u-convention", "raw"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
}
