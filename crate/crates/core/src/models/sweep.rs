//! Error sweeps of the closed-form levels against exact references.

use super::bands::band_means;
use super::cosine::{cosine_rwa_energy, CosineParams, ExpansionVariant};
use super::fock::cosine_numeric_fock;
use super::morse::{morse_exact, morse_rwa_full, morse_rwa_second_order, MorseParams};
use crate::error::{invalid, Error, Result};
use crate::par::{self, Exec};

/// Quasimomenta averaged per band for [`CosineReference::BandMean`].
pub const BAND_MEAN_K_SAMPLES: usize = 32;

/// Largest level index accepted by the cosine sweep.
const COSINE_NMAX_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// `|E_approx − E_ref|`
    Absolute,
    /// `|E_approx − E_ref| / E_ref`
    Relative,
}

/// Exact reference used for the cosine levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CosineReference {
    /// Brillouin-zone mean of Bloch band `n`, with `(dim − 1)/2` plane waves
    /// on each side.
    #[default]
    BandMean,
    /// Central-well multiplets of the truncated Fock diagonalization.
    FockMultiplet,
}

/// Which Morse closed form is compared with the exact levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorseApprox {
    Full,
    Printed,
    Derivation,
}

impl MorseApprox {
    pub fn label(self) -> &'static str {
        match self {
            MorseApprox::Full => "full",
            MorseApprox::Printed => "printed",
            MorseApprox::Derivation => "derivation",
        }
    }

    /// The approximate level `n`.
    pub fn energy(self, p: &MorseParams, n: usize) -> f64 {
        match self {
            MorseApprox::Full => morse_rwa_full(p, n),
            MorseApprox::Printed => morse_rwa_second_order(p, n, ExpansionVariant::Printed),
            MorseApprox::Derivation => morse_rwa_second_order(p, n, ExpansionVariant::Derivation),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    /// Sweep parameter (`g0²` or `λ`).
    pub param: f64,
    pub n: usize,
    pub approx: f64,
    pub reference: f64,
    pub error: f64,
}

/// Rows ordered by grid index, then level.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    pub kind: ErrorKind,
    pub rows: Vec<ErrorRow>,
}

impl ErrorTable {
    pub fn get(&self, param: f64, n: usize) -> Option<&ErrorRow> {
        self.rows.iter().find(|r| r.param == param && r.n == n)
    }

    /// Mean error over the levels recorded at `param`.
    pub fn mean_at(&self, param: f64) -> Option<f64> {
        let errs: Vec<f64> = self.rows.iter().filter(|r| r.param == param).map(|r| r.error).collect();
        (!errs.is_empty()).then(|| errs.iter().sum::<f64>() / errs.len() as f64)
    }
}

/// Absolute errors `δ_E(n)` for `n = 0..=n_max` at one `g0²`.
pub fn cosine_error_rows(
    exec: Exec,
    q: f64,
    g0sq: f64,
    n_max: usize,
    dim: usize,
    reference: CosineReference,
) -> Result<Vec<ErrorRow>> {
    if n_max > COSINE_NMAX_LIMIT {
        return Err(invalid(format!("n_max = {n_max} exceeds {COSINE_NMAX_LIMIT}")));
    }
    let p = CosineParams::from_g0sq(g0sq, q)?;
    let levels = n_max + 1;
    let exact = match reference {
        CosineReference::BandMean => {
            if dim < 2 * (levels + 8) + 1 {
                return Err(invalid(format!("dim = {dim} is too small for {levels} bands")));
            }
            band_means(exec, g0sq, q, levels, (dim - 1) / 2, BAND_MEAN_K_SAMPLES)?
        }
        CosineReference::FockMultiplet => {
            let table = cosine_numeric_fock(&p, dim, levels)?;
            if !table.converged {
                return Err(Error::ConvergenceFailure { iterations: dim });
            }
            table.energies
        }
    };
    Ok(exact
        .into_iter()
        .enumerate()
        .map(|(n, reference)| {
            let approx = cosine_rwa_energy(&p, n);
            ErrorRow { param: g0sq, n, approx, reference, error: (approx - reference).abs() }
        })
        .collect())
}

pub fn error_sweep_cosine(q: f64, g0sq_grid: &[f64], n_max: usize, dim: usize) -> Result<ErrorTable> {
    error_sweep_cosine_with(Exec::default(), q, g0sq_grid, n_max, dim, CosineReference::default())
}

pub fn error_sweep_cosine_with(
    exec: Exec,
    q: f64,
    g0sq_grid: &[f64],
    n_max: usize,
    dim: usize,
    reference: CosineReference,
) -> Result<ErrorTable> {
    if g0sq_grid.is_empty() {
        return Err(invalid("g0² grid is empty"));
    }
    // the outer map carries the parallelism; inner band means stay sequential
    let per_point = par::map(exec, g0sq_grid, |&g0sq| {
        cosine_error_rows(Exec::Sequential, q, g0sq, n_max, dim, reference)
            .map_err(|e| Error::AtGridPoint { param: g0sq, source: Box::new(e) })
    });
    let rows = per_point.into_iter().collect::<Result<Vec<_>>>()?.concat();
    Ok(ErrorTable { kind: ErrorKind::Absolute, rows })
}

/// Relative errors `Δ_E(n)` for `n = 0..=n_max` at one `λ`.
pub fn morse_error_rows(alpha: f64, lam: f64, n_max: usize, approx: MorseApprox) -> Result<Vec<ErrorRow>> {
    let p = MorseParams::new(lam, alpha, 0.0)?;
    (0..=n_max)
        .map(|n| {
            let reference = morse_exact(&p, n)?;
            let e = approx.energy(&p, n);
            Ok(ErrorRow { param: lam, n, approx: e, reference, error: ((e - reference) / reference).abs() })
        })
        .collect()
}

pub fn error_sweep_morse(alpha: f64, lambda_grid: &[f64], n_max: usize, approx: MorseApprox) -> Result<ErrorTable> {
    error_sweep_morse_with(Exec::default(), alpha, lambda_grid, n_max, approx)
}

pub fn error_sweep_morse_with(
    exec: Exec,
    alpha: f64,
    lambda_grid: &[f64],
    n_max: usize,
    approx: MorseApprox,
) -> Result<ErrorTable> {
    if lambda_grid.is_empty() {
        return Err(invalid("lambda grid is empty"));
    }
    let per_point = par::map(exec, lambda_grid, |&lam| {
        morse_error_rows(alpha, lam, n_max, approx).map_err(|e| Error::AtGridPoint { param: lam, source: Box::new(e) })
    });
    let rows = per_point.into_iter().collect::<Result<Vec<_>>>()?.concat();
    Ok(ErrorTable { kind: ErrorKind::Relative, rows })
}
