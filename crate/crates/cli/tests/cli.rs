use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfrwa")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows split into fields, skipping comments and the column header.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn field(row: &[String], i: usize) -> f64 {
    row[i].parse().unwrap()
}

#[test]
fn bands_defaults() {
    let csv = stdout(&["bands"]);
    assert!(csv.starts_with("# selfrwa bands\n# g0sq=10\n# q=1\n# kpoints=101\n# bands=6\n# mmax=40\nk,n,energy\n"));
    let r = rows(&csv);
    assert_eq!(r.len(), 606);
    let band0: Vec<f64> = r.iter().filter(|x| x[1] == "0").map(|x| field(x, 2)).collect();
    let spread = band0.iter().copied().fold(f64::MIN, f64::max) - band0.iter().copied().fold(f64::MAX, f64::min);
    assert!(spread < 1e-2);
}

#[test]
fn bands_free_particle_origin() {
    let csv = stdout(&["bands", "--g0sq", "0"]);
    assert!(csv.lines().any(|l| l == "0,0,0"));
}

#[test]
fn bands_cutoff_warning_is_a_comment() {
    let csv = stdout(&["bands", "--g0sq", "400", "--mmax", "14", "--kpoints", "3"]);
    assert!(csv.lines().any(|l| l.starts_with("# warning: plane-wave cutoff")));
    assert!(!stdout(&["bands", "--kpoints", "3"]).contains("warning"));
}

#[test]
fn cosine_errors_nonnegative_and_finite() {
    let csv = stdout(&["cosine-errors", "--g0sq", "5,10,20"]);
    assert!(csv.contains("# reference=band-mean\n"));
    assert!(csv.contains("\ng0sq,n,E_rwa,E_num,delta\n"));
    let r = rows(&csv);
    assert_eq!(r.len(), 18);
    for row in &r {
        let d = field(row, 4);
        assert!(d.is_finite() && d >= 0.0);
    }
}

#[test]
fn cosine_errors_default_grid() {
    let csv = stdout(&["cosine-errors", "--steps", "4", "--g0sq-min", "10", "--g0sq-max", "40"]);
    assert!(csv.contains("# g0sq=10;20;30;40\n"));
    assert_eq!(rows(&csv).len(), 24);
}

#[test]
fn morse_errors_variants() {
    let derivation = rows(&stdout(&["morse-errors"]));
    let at10 = derivation.iter().find(|r| r[0] == "10" && r[1] == "0").unwrap();
    assert!((field(at10, 4) - 0.0495).abs() < 5e-4);
    assert_eq!(at10[5], "derivation");

    let printed = rows(&stdout(&["morse-errors", "--variant", "printed"]));
    let at10 = printed.iter().find(|r| r[0] == "10" && r[1] == "0").unwrap();
    assert!((field(at10, 4) - 0.205).abs() < 5e-3);
}

#[test]
fn morse_unbound_levels_become_comments() {
    let csv = stdout(&["morse-errors", "--lambda-min", "2", "--lambda-max", "2", "--steps", "1"]);
    assert_eq!(rows(&csv).len(), 3);
    assert_eq!(csv.lines().filter(|l| l.starts_with("# lambda=2 n=")).count(), 3);
}

#[test]
fn veff_vanishes_at_origin() {
    let r = rows(&stdout(&["veff"]));
    assert_eq!(r.len(), 3 * 121);
    let origin: Vec<_> = r.iter().filter(|x| x[0] == "0").collect();
    assert_eq!(origin.len(), 3);
    assert!(origin.iter().all(|x| x[2] == "0"));
    assert!(r.iter().filter(|x| x[0] == "1").all(|x| x[2] == "1"));
}

#[test]
fn identities_cosine_block_confirmed() {
    let csv = stdout(&["identities"]);
    let r = rows(&csv);
    let cosine: Vec<_> = r.iter().filter(|x| x[0] == "cosine").collect();
    assert_eq!(cosine.len(), 78);
    assert!(cosine.iter().all(|x| x.last().unwrap() == "confirmed"));
    assert!(!r.iter().any(|x| x.last().unwrap() == "failed"));
}

#[test]
fn identities_impossible_tolerance_fails_numerically() {
    assert_eq!(run(&["identities", "--tol", "1e-30"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let csv = stdout(&["selftest"]);
    let r = rows(&csv);
    assert!(r.len() >= 5);
    assert!(r.iter().all(|x| x[3] == "pass"), "{csv}");
}

#[test]
fn out_flag_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("veff.csv");
    let out = run(&["veff", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&["veff"]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["bands", "--kpoints", "x"]).status.code(), Some(1));
    assert_eq!(run(&["bands", "--kpoints", "1"]).status.code(), Some(1));
    assert_eq!(run(&["bands", "--q", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["cosine-errors", "--nmax", "9", "--g0sq", "10"]).status.code(), Some(1));
    assert_eq!(run(&["morse-errors", "--variant", "exact"]).status.code(), Some(1));
    assert_eq!(run(&["selftest", "--tol", "0"]).status.code(), Some(1));
}

#[test]
fn usage_errors_carry_a_message() {
    let out = run(&["veff", "--alpha", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));
}

#[test]
fn cosine_fock_reference_is_recorded() {
    let csv = stdout(&["cosine-errors", "--g0sq", "10", "--nmax", "1", "--dim", "201", "--reference", "fock"]);
    assert!(csv.contains("# reference=fock\n"));
    let r = rows(&csv);
    assert!(r.len() == 2 || csv.contains("# g0sq=10: "));
}
