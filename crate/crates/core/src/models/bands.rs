use crate::error::{invalid, Result};
use crate::par::{self, Exec};
use crate::specfun::symtridiag_lowest;

/// Extra plane waves used to test the cutoff.
const CUTOFF_PROBE: usize = 8;
const CUTOFF_TOL: f64 = 1e-8;

/// Quasimomentum grid and plane-wave cutoff for a band calculation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandGrid {
    pub k_points: usize,
    pub n_bands: usize,
    /// Plane waves `m = −m_max..=m_max`.
    pub m_max: usize,
}

/// Bloch bands `E_n(k)` of `p²/2 − g0² cos(q x)` on a uniform grid over the
/// first Brillouin zone `[−q/2, q/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure {
    pub g0sq: f64,
    pub q: f64,
    pub m_max: usize,
    pub k_grid: Vec<f64>,
    /// `energies[n][i]` is band `n` at `k_grid[i]`.
    pub energies: Vec<Vec<f64>>,
    /// Largest shift of the top band when the cutoff grows by eight plane waves.
    pub cutoff_shift: f64,
}

impl BandStructure {
    pub fn n_bands(&self) -> usize {
        self.energies.len()
    }

    pub fn cutoff_warning(&self) -> bool {
        self.cutoff_shift > CUTOFF_TOL
    }

    /// `max_k E_n − min_k E_n`.
    pub fn width(&self, n: usize) -> f64 {
        let band = &self.energies[n];
        let max = band.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = band.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }
}

/// Lowest `count` eigenvalues of the Bloch matrix at quasimomentum `k`:
/// diagonal `(k + m q)²/2`, off-diagonal `−g0²/2`.
pub(crate) fn bloch_levels(g0sq: f64, q: f64, k: f64, m_max: usize, count: usize) -> Result<Vec<f64>> {
    let size = 2 * m_max + 1;
    let diag: Vec<f64> = (0..size)
        .map(|i| {
            let m = i as f64 - m_max as f64;
            0.5 * (k + m * q).powi(2)
        })
        .collect();
    if g0sq == 0.0 {
        // already diagonal; skip the solver so free levels come out exact
        let mut free = diag;
        free.sort_by(f64::total_cmp);
        free.truncate(count);
        return Ok(free);
    }
    let off = vec![-0.5 * g0sq; size - 1];
    symtridiag_lowest(&diag, &off, count)
}

pub fn mathieu_bands(g0sq: f64, q: f64, grid: BandGrid) -> Result<BandStructure> {
    mathieu_bands_with(Exec::default(), g0sq, q, grid)
}

pub fn mathieu_bands_with(exec: Exec, g0sq: f64, q: f64, grid: BandGrid) -> Result<BandStructure> {
    validate(g0sq, q)?;
    if grid.k_points < 2 {
        return Err(invalid(format!("need at least 2 k-points, got {}", grid.k_points)));
    }
    if grid.n_bands == 0 {
        return Err(invalid("need at least one band"));
    }
    if grid.m_max < grid.n_bands + 8 {
        return Err(invalid(format!(
            "plane-wave cutoff m_max = {} must be at least n_bands + 8 = {}",
            grid.m_max,
            grid.n_bands + 8
        )));
    }
    let last = (grid.k_points - 1) as f64;
    let k_grid: Vec<f64> = (0..grid.k_points).map(|i| q * (i as f64 / last - 0.5)).collect();
    let per_k = par::try_map(exec, &k_grid, |&k| -> Result<(Vec<f64>, f64)> {
        let levels = bloch_levels(g0sq, q, k, grid.m_max, grid.n_bands)?;
        let probe = bloch_levels(g0sq, q, k, grid.m_max + CUTOFF_PROBE, grid.n_bands)?;
        let top = grid.n_bands - 1;
        Ok((levels.clone(), (probe[top] - levels[top]).abs()))
    })?;
    let cutoff_shift = per_k.iter().map(|(_, s)| *s).fold(0.0, f64::max);
    let energies = (0..grid.n_bands).map(|n| per_k.iter().map(|(lv, _)| lv[n]).collect()).collect();
    Ok(BandStructure { g0sq, q, m_max: grid.m_max, k_grid, energies, cutoff_shift })
}

/// Brillouin-zone average of each of the lowest `n_bands` bands, by the
/// midpoint rule on `k_samples` quasimomenta (spectrally accurate for the
/// periodic, smooth `E_n(k)` of isolated bands).
pub fn band_means(exec: Exec, g0sq: f64, q: f64, n_bands: usize, m_max: usize, k_samples: usize) -> Result<Vec<f64>> {
    validate(g0sq, q)?;
    if k_samples == 0 || m_max < n_bands + 8 {
        return Err(invalid("band means need k_samples >= 1 and m_max >= n_bands + 8"));
    }
    let ks: Vec<f64> = (0..k_samples).map(|i| -0.5 * q + (i as f64 + 0.5) * q / k_samples as f64).collect();
    let per_k = par::try_map(exec, &ks, |&k| bloch_levels(g0sq, q, k, m_max, n_bands))?;
    Ok((0..n_bands)
        .map(|n| per_k.iter().map(|lv| lv[n]).sum::<f64>() / k_samples as f64)
        .collect())
}

fn validate(g0sq: f64, q: f64) -> Result<()> {
    if !(g0sq >= 0.0 && g0sq.is_finite()) {
        return Err(invalid(format!("g0² must be non-negative, got {g0sq}")));
    }
    if !(q > 0.0 && q.is_finite()) {
        return Err(invalid(format!("q must be positive, got {q}")));
    }
    Ok(())
}
