use std::path::Path;

use selfrwa::identities::{render_csv, render_text, run_suite, IdentityStatus};
use selfrwa::models::{
    cosine_error_rows, mathieu_bands, morse_exact, morse_rwa_full, morse_veff_normalized, BandGrid, CosineReference,
    MorseApprox, MorseParams,
};
use selfrwa::oplib::{
    default_oracle_order, diag_power_expectation_f64, fock_diagonal, fock_diagonal_oracle, fock_diagonal_oracle_fn,
    rwa_energy, Cosine, SeriesControl, TaylorPotential,
};
use selfrwa::{par, Error, Exec};

use crate::args::{BandsArgs, Command, CosineArgs, MorseArgs, Reference, SuiteArgs, Variant, VeffArgs};
use crate::output::{linspace, list, Csv};

pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            Error::AtGridPoint { ref source, .. } if matches!(**source, Error::InvalidArgument(_)) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(csv: &Csv, out: Option<&Path>) -> Result<(), Failure> {
    csv.write(out).map_err(|e| Failure::Numerical(format!("cannot write output: {e}")))
}

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Bands(a) => bands(&a),
        Command::CosineErrors(a) => cosine_errors(&a),
        Command::MorseErrors(a) => morse_errors(&a),
        Command::Veff(a) => veff(&a),
        Command::Identities(a) => identities(&a),
        Command::Selftest(a) => selftest(&a),
    }
}

fn bands(a: &BandsArgs) -> Result<(), Failure> {
    let grid = BandGrid { k_points: a.kpoints, n_bands: a.bands, m_max: a.mmax };
    let b = mathieu_bands(a.g0sq, a.q, grid)?;
    let mut csv = Csv::new("bands");
    csv.param("g0sq", a.g0sq);
    csv.param("q", a.q);
    csv.param("kpoints", a.kpoints);
    csv.param("bands", a.bands);
    csv.param("mmax", a.mmax);
    if b.cutoff_warning() {
        csv.comment(format_args!(
            "warning: plane-wave cutoff not converged, top band moves by {} with 8 more plane waves",
            b.cutoff_shift
        ));
    }
    csv.columns(&["k", "n", "energy"]);
    for (i, k) in b.k_grid.iter().enumerate() {
        for (n, band) in b.energies.iter().enumerate() {
            csv.row(&[k, &n, &band[i]]);
        }
    }
    emit(&csv, a.output.out.as_deref())
}

fn cosine_errors(a: &CosineArgs) -> Result<(), Failure> {
    let grid = if a.g0sq.is_empty() {
        if a.steps == 0 {
            return Err(usage("--steps must be at least 1"));
        }
        linspace(a.g0sq_min, a.g0sq_max, a.steps)
    } else {
        a.g0sq.clone()
    };
    let reference = match a.reference {
        Reference::BandMean => CosineReference::BandMean,
        Reference::Fock => CosineReference::FockMultiplet,
    };
    // points in parallel, each point sequential inside
    let per_point = par::map(Exec::default(), &grid, |&g| {
        cosine_error_rows(Exec::Sequential, a.q, g, a.nmax, a.dim, reference)
    });

    let mut csv = Csv::new("cosine-errors");
    csv.param("q", a.q);
    csv.param("g0sq", list(&grid));
    csv.param("nmax", a.nmax);
    csv.param("dim", a.dim);
    csv.param("reference", reference_label(a.reference));
    csv.columns(&["g0sq", "n", "E_rwa", "E_num", "delta"]);
    for (g, rows) in grid.iter().zip(per_point) {
        match rows {
            Ok(rows) => {
                for r in rows {
                    csv.row(&[g, &r.n, &r.approx, &r.reference, &r.error]);
                }
            }
            Err(e @ Error::InvalidArgument(_)) => return Err(e.into()),
            Err(e) => csv.comment(format_args!("g0sq={g}: {e}")),
        }
    }
    emit(&csv, a.output.out.as_deref())
}

fn reference_label(r: Reference) -> &'static str {
    match r {
        Reference::BandMean => "band-mean",
        Reference::Fock => "fock",
    }
}

fn morse_errors(a: &MorseArgs) -> Result<(), Failure> {
    if a.steps == 0 {
        return Err(usage("--steps must be at least 1"));
    }
    let approx = match a.variant {
        Variant::Printed => MorseApprox::Printed,
        Variant::Derivation => MorseApprox::Derivation,
        Variant::Full => MorseApprox::Full,
    };
    let grid = linspace(a.lambda_min, a.lambda_max, a.steps);
    let params = grid
        .iter()
        .map(|&lam| MorseParams::new(lam, a.alpha, 0.0))
        .collect::<Result<Vec<_>, _>>()?;

    let mut csv = Csv::new("morse-errors");
    csv.param("alpha", a.alpha);
    csv.param("lambda", list(&grid));
    csv.param("nmax", a.nmax);
    csv.param("variant", approx.label());
    csv.columns(&["lambda", "n", "E_rwa", "E_exact", "Delta", "variant"]);
    for (lam, p) in grid.iter().zip(&params) {
        for n in 0..=a.nmax {
            match morse_exact(p, n) {
                Ok(exact) => {
                    let e = approx.energy(p, n);
                    let delta = ((e - exact) / exact).abs();
                    csv.row(&[lam, &n, &e, &exact, &delta, &approx.label()]);
                }
                Err(e) => csv.comment(format_args!("lambda={lam} n={n}: {e}")),
            }
        }
    }
    emit(&csv, a.output.out.as_deref())
}

fn veff(a: &VeffArgs) -> Result<(), Failure> {
    if a.steps < 2 {
        return Err(usage("--steps must be at least 2"));
    }
    if a.alpha.is_empty() {
        return Err(usage("--alpha needs at least one value"));
    }
    if let Some(bad) = a.alpha.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(usage(format!("alpha must be positive, got {bad}")));
    }
    let xs = linspace(a.x_min, a.x_max, a.steps);
    let mut csv = Csv::new("veff");
    csv.param("alpha", list(&a.alpha));
    csv.param("x_min", a.x_min);
    csv.param("x_max", a.x_max);
    csv.param("steps", a.steps);
    csv.columns(&["x", "alpha", "v_normalized"]);
    for alpha in &a.alpha {
        for x in &xs {
            let v = morse_veff_normalized(*alpha, *x)?;
            csv.row(&[x, alpha, &v]);
        }
    }
    emit(&csv, a.output.out.as_deref())
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--tol must be positive, got {tol}")))
    }
}

fn identities(a: &SuiteArgs) -> Result<(), Failure> {
    check_tol(a.tol)?;
    let mut reports = run_suite(Exec::default())?;
    for r in &mut reports {
        r.status = r.status_at(a.tol);
    }
    let mut csv = Csv::new("identities");
    csv.param("tol", a.tol);
    for line in render_text(&reports).lines() {
        csv.comment(line);
    }
    csv.push_raw(&render_csv(&reports));
    emit(&csv, a.output.out.as_deref())?;
    let failed = reports.iter().filter(|r| r.status == IdentityStatus::Failed).count();
    if failed > 0 {
        return Err(Failure::Numerical(format!("{failed} identity checks failed")));
    }
    Ok(())
}

struct Check {
    name: &'static str,
    deviation: f64,
    bound: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.deviation <= self.bound
    }
}

fn max_dev(devs: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so a broken value never passes
    devs.into_iter().fold(0.0, |m, d| if d.is_nan() || m.is_nan() { f64::NAN } else { m.max(d) })
}

/// `<N|(a† + a)^k|N>` by applying `a† + a` to a sparse vector.
fn ladder_power_diagonal(k: usize, n: usize) -> f64 {
    let mut v = vec![0.0; n + k + 2];
    v[n] = 1.0;
    for _ in 0..k {
        let mut next = vec![0.0; v.len()];
        for (m, &c) in v.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if m > 0 {
                next[m - 1] += c * (m as f64).sqrt();
            }
            if m + 1 < v.len() {
                next[m + 1] += c * ((m + 1) as f64).sqrt();
            }
        }
        v = next;
    }
    v[n]
}

fn selftest_checks(tol: f64) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();

    let ordering = (0..=10).flat_map(|k| (0..=12).map(move |n| (k, n))).map(|(k, n)| {
        let exact = diag_power_expectation_f64(k, n as u64);
        (exact - ladder_power_diagonal(k, n)).abs() / exact.abs().max(1.0)
    });
    checks.push(Check { name: "ordering_vs_ladder_matrix", deviation: max_dev(ordering), bound: 1e-9 });

    let mut engine = Vec::new();
    for q in [0.5, 1.0, 2.0] {
        let v = Cosine { amplitude: 1.0, q };
        for omega in [0.5, 1.0, 10f64.sqrt()] {
            for n in 0..=12 {
                let a = fock_diagonal(&v, omega, n, SeriesControl::default())?;
                let b = fock_diagonal_oracle(&v, omega, n, default_oracle_order(n))?;
                engine.push((a - b).abs());
            }
        }
    }
    checks.push(Check { name: "engine_vs_quadrature_cosine", deviation: max_dev(engine), bound: 1e-8 });

    let v = Cosine { amplitude: -10.0, q: 1.0 };
    let omega = v.curvature().sqrt();
    let mut pt = Vec::new();
    for n in 0..=5 {
        let correction = fock_diagonal_oracle_fn(
            |x| v.value_at(x) - 0.5 * omega * omega * x * x,
            omega,
            n,
            default_oracle_order(n),
        )?;
        pt.push((rwa_energy(&v, n)? - omega * (n as f64 + 0.5) - correction).abs());
    }
    checks.push(Check { name: "first_order_perturbation", deviation: max_dev(pt), bound: 1e-9 });

    let p = MorseParams::new(10.0, 1.0, 0.0)?;
    let mut morse = Vec::new();
    for n in 0..=3 {
        morse.push((morse_rwa_full(&p, n) - rwa_energy(&p.potential(), n)?).abs());
    }
    checks.push(Check { name: "morse_closed_form_vs_engine", deviation: max_dev(morse), bound: 1e-9 });

    let grid = BandGrid { k_points: 21, n_bands: 4, m_max: 16 };
    let b = mathieu_bands(0.0, 1.0, grid)?;
    let mut free = Vec::new();
    for (i, &k) in b.k_grid.iter().enumerate() {
        let mut folded: Vec<f64> = (-16i32..=16).map(|m| 0.5 * (k + m as f64).powi(2)).collect();
        folded.sort_by(f64::total_cmp);
        for (n, band) in b.energies.iter().enumerate() {
            free.push((band[i] - folded[n]).abs());
        }
    }
    checks.push(Check { name: "free_particle_bands", deviation: max_dev(free), bound: 1e-12 });

    let reports = run_suite(Exec::default())?;
    let failed = reports.iter().filter(|r| r.status_at(tol) == IdentityStatus::Failed).count();
    checks.push(Check { name: "identity_suite_failures", deviation: failed as f64, bound: 0.0 });

    Ok(checks)
}

fn selftest(a: &SuiteArgs) -> Result<(), Failure> {
    check_tol(a.tol)?;
    let checks = selftest_checks(a.tol)?;
    let mut csv = Csv::new("selftest");
    csv.param("tol", a.tol);
    csv.columns(&["check", "deviation", "bound", "status"]);
    for c in &checks {
        let status = if c.passed() { "pass" } else { "FAIL" };
        csv.row(&[&c.name, &c.deviation, &c.bound, &status]);
    }
    emit(&csv, a.output.out.as_deref())?;
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if failed > 0 {
        return Err(Failure::Numerical(format!("{failed} self checks failed")));
    }
    Ok(())
}
