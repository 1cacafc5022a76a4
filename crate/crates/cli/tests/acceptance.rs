//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Every tolerance and runtime budget is pinned as a constant below.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use selfrwa::identities::{run_suite, IdentityReport, IdentityStatus, Reading};
use selfrwa::models::{
    error_sweep_cosine, error_sweep_morse, mathieu_bands, morse_exact, morse_numeric_fock, morse_rwa_full,
    BandGrid, MorseApprox, MorseParams,
};
use selfrwa::oplib::{
    default_oracle_order, diag_power_expectation, diag_power_expectation_f64, fock_diagonal, fock_diagonal_oracle,
    fock_diagonal_oracle_fn, rwa_energy, Cosine, Gaussian, Morse, SeriesControl, TaylorPotential,
};
use selfrwa::Exec;

const ORDERING_FLOAT_TOL: f64 = 1e-9;
const ENGINE_TOL: f64 = 1e-8;
const PT_TOL: f64 = 1e-9;
const COSINE_DELTA0_MAX: f64 = 5e-3;
const FREE_BAND_TOL: f64 = 1e-12;
const BAND_WIDTH_RATIO: f64 = 100.0;
const MORSE_FOCK_TOL: f64 = 1e-4;
const MORSE_ENGINE_TOL: f64 = 1e-9;
const MORSE_RESIDUE_MAX: f64 = 0.02;
const MORSE_SHRINK: (f64, f64) = (6.5, 9.5);
const MORSE_DELTA_10: (f64, f64) = (0.0495, 0.0005);
const MORSE_DELTA_20: (f64, f64) = (0.0245, 0.0005);
const MORSE_PRINTED_10: (f64, f64) = (0.205, 0.005);
const COSINE_IDENTITY_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-8;
const PRINTED_GAUSSIAN_MIN_DEV: f64 = 0.1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    match budget {
        Some(b) => {
            o.detail = format!("{} [{elapsed:.2?} of {b:?}]", o.detail);
            o.pass &= elapsed <= b;
        }
        None => o.detail = format!("{} [{elapsed:.2?}]", o.detail),
    }
    o
}

fn worst(devs: impl IntoIterator<Item = f64>) -> f64 {
    devs.into_iter().fold(0.0, |m: f64, d| if d.is_nan() || m.is_nan() { f64::NAN } else { m.max(d) })
}

/// Diagonal of `T^k` where `T` is the integer matrix similar to `a + a†`
/// (`T[m+1][m] = 1`, `T[m][m+1] = m + 1`).
fn integer_power_diagonal(k: usize, n: usize) -> i128 {
    let dim = n + k + 2;
    let mut v = vec![0i128; dim];
    v[n] = 1;
    for _ in 0..k {
        let mut next = vec![0i128; dim];
        for (m, &c) in v.iter().enumerate() {
            if m + 1 < dim {
                next[m + 1] += c;
            }
            if m > 0 {
                next[m - 1] += c * m as i128;
            }
        }
        v = next;
    }
    v[n]
}

/// Same diagonal with the symmetric `sqrt` entries in floating point.
fn float_power_diagonal(k: usize, n: usize) -> f64 {
    let dim = n + k + 2;
    let mut v = vec![0.0; dim];
    v[n] = 1.0;
    for _ in 0..k {
        let mut next = vec![0.0; dim];
        for (m, &c) in v.iter().enumerate() {
            if m + 1 < dim {
                next[m + 1] += c * ((m + 1) as f64).sqrt();
            }
            if m > 0 {
                next[m - 1] += c * (m as f64).sqrt();
            }
        }
        v = next;
    }
    v[n]
}

fn ordering_oracle() -> Outcome {
    let mut exact_mismatch = 0;
    let mut float_dev: f64 = 0.0;
    for k in 0..=10 {
        for n in 0..=12 {
            let r = diag_power_expectation(k, n as u64);
            let want = integer_power_diagonal(k, n);
            if !r.is_integer() || r.to_integer().to_string() != want.to_string() {
                exact_mismatch += 1;
            }
            let f = float_power_diagonal(k, n);
            float_dev = worst([float_dev, (diag_power_expectation_f64(k, n as u64) - f).abs() / f.abs().max(1.0)]);
        }
    }
    outcome(
        exact_mismatch == 0 && float_dev <= ORDERING_FLOAT_TOL,
        format!("exact mismatches {exact_mismatch}, float max rel dev {float_dev:e}"),
    )
}

fn engine_quadrature() -> Outcome {
    let g0q_base = 10f64.sqrt();
    let mut cases: Vec<(Box<dyn TaylorPotential>, f64)> = Vec::new();
    for q in [0.5, 1.0, 2.0] {
        for omega in [0.5, 1.0, g0q_base * q] {
            cases.push((Box::new(Cosine { amplitude: 1.0, q }), omega));
        }
    }
    for omega in [0.5, 1.0, g0q_base] {
        cases.push((Box::new(Gaussian { alpha_sq: 1.0 }), omega));
        cases.push((Box::new(Morse { lam: 1.0, alpha: 1.0 }.even_part()), omega));
    }
    let mut failures = Vec::new();
    let mut dev: f64 = 0.0;
    for (v, omega) in &cases {
        for n in 0..=12 {
            let quad = fock_diagonal_oracle(v.as_ref(), *omega, n, default_oracle_order(n));
            match (fock_diagonal(v.as_ref(), *omega, n, SeriesControl::default()), quad) {
                (Ok(e), Ok(q)) if (e - q).abs() <= ENGINE_TOL => dev = dev.max((e - q).abs()),
                (e, q) => failures.push(format!("{} w={omega} n={n}: {e:?} vs {q:?}", v.label())),
            }
        }
    }
    let first = failures.first().cloned().unwrap_or_default();
    outcome(
        failures.is_empty(),
        format!("{} of {} points fail, max dev on passing {dev:e}; first failure: {first}", failures.len(), cases.len() * 13),
    )
}

fn perturbation_identity() -> Outcome {
    let v = Cosine { amplitude: -10.0, q: 1.0 };
    let omega = v.curvature().sqrt();
    let devs = (0..=5).map(|n| {
        let correction =
            fock_diagonal_oracle_fn(|x| v.value_at(x) - 0.5 * omega * omega * x * x, omega, n, default_oracle_order(n))
                .unwrap();
        (rwa_energy(&v, n).unwrap() - omega * (n as f64 + 0.5) - correction).abs()
    });
    let dev = worst(devs);
    outcome(dev <= PT_TOL, format!("max dev {dev:e}"))
}

fn cosine_accuracy() -> Outcome {
    let grid = [5.0, 10.0, 20.0, 40.0];
    let t = match error_sweep_cosine(1.0, &grid, 5, 765) {
        Ok(t) => t,
        Err(e) => return outcome(false, e.to_string()),
    };
    let d0 = t.get(10.0, 0).unwrap().error;
    let d5 = t.get(10.0, 5).unwrap().error;
    let means: Vec<f64> = grid.iter().map(|&g| t.mean_at(g).unwrap()).collect();
    let decreasing = means.windows(2).all(|w| w[1] < w[0]);
    outcome(
        d0 <= COSINE_DELTA0_MAX && d0 < d5 && decreasing,
        format!("delta0 {d0:e}, delta5 {d5:e}, means {means:?}"),
    )
}

fn band_structure() -> Outcome {
    let free = mathieu_bands(0.0, 1.0, BandGrid { k_points: 101, n_bands: 6, m_max: 40 }).unwrap();
    let mut free_dev: f64 = 0.0;
    for (i, &k) in free.k_grid.iter().enumerate() {
        let mut folded: Vec<f64> = (-40i32..=40).map(|m| 0.5 * (k + m as f64).powi(2)).collect();
        folded.sort_by(f64::total_cmp);
        for n in 0..6 {
            free_dev = free_dev.max((free.energies[n][i] - folded[n]).abs());
        }
    }
    let b = mathieu_bands(10.0, 1.0, BandGrid { k_points: 101, n_bands: 6, m_max: 40 }).unwrap();
    let (w0, w5) = (b.width(0), b.width(5));
    outcome(
        free_dev <= FREE_BAND_TOL && BAND_WIDTH_RATIO * w0 <= w5,
        format!("free dev {free_dev:e}, width0 {w0:e}, width5 {w5:e}, ratio {:e}", w5 / w0),
    )
}

fn morse_chain() -> Outcome {
    let p = MorseParams::new(10.0, 1.0, 0.0).unwrap();
    let table = morse_numeric_fock(&p, 765, 4).unwrap();
    let fock_dev = worst((0..=3).map(|n| (table.energies[n] - morse_exact(&p, n).unwrap()).abs()));
    let engine_dev = worst((0..=5).map(|n| (morse_rwa_full(&p, n) - rwa_energy(&p.potential(), n).unwrap()).abs()));
    let residue = |lam: f64| {
        let p = MorseParams::new(lam, 1.0, 0.0).unwrap();
        (MorseApprox::Full.energy(&p, 0) - MorseApprox::Derivation.energy(&p, 0)).abs()
    };
    let (r10, r20) = (residue(10.0), residue(20.0));
    let shrink = r10 / r20;
    let mut fails = Vec::new();
    if !(fock_dev <= MORSE_FOCK_TOL) {
        fails.push("fock");
    }
    if !(engine_dev <= MORSE_ENGINE_TOL) {
        fails.push("engine");
    }
    if !(r10 <= MORSE_RESIDUE_MAX) {
        fails.push("residue");
    }
    if !(MORSE_SHRINK.0..=MORSE_SHRINK.1).contains(&shrink) {
        fails.push("shrink factor");
    }
    outcome(
        fails.is_empty(),
        format!(
            "fock dev {fock_dev:e}, engine dev {engine_dev:e}, residue {r10:e}, shrink on doubling {shrink} (want {:?}); failing: {fails:?}",
            MORSE_SHRINK
        ),
    )
}

fn within(x: f64, (center, tol): (f64, f64)) -> bool {
    (x - center).abs() <= tol
}

fn morse_trends() -> Outcome {
    let grid: Vec<f64> = (0..=70).map(|i| 5.0 + 0.5 * i as f64).collect();
    let t = error_sweep_morse(1.0, &grid, 5, MorseApprox::Derivation).unwrap();
    let monotone = (0..=5).all(|n| {
        let errs: Vec<f64> = grid.iter().map(|&l| t.get(l, n).unwrap().error).collect();
        errs.windows(2).all(|w| w[1] < w[0])
    });
    let d10 = t.get(10.0, 0).unwrap().error;
    let d20 = t.get(20.0, 0).unwrap().error;
    let printed = error_sweep_morse(1.0, &[10.0], 0, MorseApprox::Printed).unwrap().rows[0].error;
    outcome(
        monotone && within(d10, MORSE_DELTA_10) && within(d20, MORSE_DELTA_20) && within(printed, MORSE_PRINTED_10),
        format!("monotone {monotone}, delta(0,10) {d10}, delta(0,20) {d20}, printed delta(0,10) {printed}"),
    )
}

fn appendix_suite() -> Outcome {
    let reports = run_suite(Exec::default()).unwrap();
    let family = |name: &str, reading: Reading| -> Vec<&IdentityReport> {
        reports.iter().filter(|r| r.name == name && r.reading == reading).collect()
    };
    let cosine = family("cosine", Reading::Corrected);
    let mut covered = 0;
    for q in [0.5, 1.0, 2.0] {
        for n in 0..=25 {
            covered += cosine.iter().any(|r| r.param("q") == Some(q) && r.param("n") == Some(n as f64)) as usize;
        }
    }
    let cosine_ok = covered == 78 && cosine.iter().all(|r| r.status_at(COSINE_IDENTITY_TOL) == IdentityStatus::Confirmed);
    // corrected readings: sums agree with quadrature; only a published closed
    // form may be flagged discrepant
    let corrected_ok = ["gaussian", "hermite"].iter().all(|name| {
        let fam = family(name, Reading::Corrected);
        !fam.is_empty()
            && fam.iter().all(|r| match r.status_at(IDENTITY_TOL) {
                IdentityStatus::Confirmed => true,
                IdentityStatus::PaperFormulaDiscrepant => r.printed_rhs && r.abs_diff_lhs_quad <= IDENTITY_TOL * r.scale.max(1.0),
                IdentityStatus::Failed => false,
            })
    });
    let printed = family("gaussian", Reading::AsPrinted)
        .into_iter()
        .find(|r| r.param("n") == Some(0.0) && r.param("alpha_sq") == Some(1.0))
        .map(|r| r.abs_diff_lhs_quad);
    let printed_ok = printed.is_some_and(|d| d > PRINTED_GAUSSIAN_MIN_DEV);
    outcome(
        cosine_ok && corrected_ok && printed_ok,
        format!("cosine {covered}/78 confirmed {cosine_ok}, corrected gaussian+hermite {corrected_ok}, printed gaussian deviation {printed:?}"),
    )
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 6] = [
        &["bands"],
        &["cosine-errors", "--steps", "8"],
        &["morse-errors", "--variant", "full"],
        &["veff"],
        &["identities"],
        &["selftest"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let mut outputs = Vec::new();
        for i in 0..2 {
            let path = dir.path().join(format!("{}-{i}.csv", args[0]));
            let status = Command::new(env!("CARGO_BIN_EXE_selfrwa"))
                .args(args)
                .arg("--out")
                .arg(&path)
                .status()
                .unwrap();
            outputs.push((status.code(), std::fs::read(&path).unwrap_or_default()));
        }
        if outputs[0] != outputs[1] || outputs[0].0 != Some(0) || outputs[0].1.is_empty() {
            differing.push(args[0]);
        }
    }
    outcome(differing.is_empty(), format!("{} subcommands, not identical: {differing:?}", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 9] = [
        ("ordering oracle", Some(Duration::from_secs(5)), ordering_oracle),
        ("engine vs quadrature", Some(Duration::from_secs(10)), engine_quadrature),
        ("first-order perturbation identity", None, perturbation_identity),
        ("cosine accuracy", Some(Duration::from_secs(60)), cosine_accuracy),
        ("band structure", Some(Duration::from_secs(30)), band_structure),
        ("morse exactness chain", Some(Duration::from_secs(60)), morse_chain),
        ("morse error trends", None, morse_trends),
        ("appendix identities", Some(Duration::from_secs(10)), appendix_suite),
        ("cli determinism", None, cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let o = timed(budget, f);
        failed += !o.pass as usize;
        println!("criterion {} {:<34} {}  {}", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
