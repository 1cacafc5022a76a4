//! Exact references by diagonalizing `p²/2 + V(x)` in a truncated Fock basis.
//!
//! `V(x)` is applied by spectral calculus: the tridiagonal position matrix is
//! diagonalized, `V` is evaluated on its eigenvalues, and the result is
//! transformed back.

use ndarray::{Array1, Array2, Axis};

use super::cosine::CosineParams;
use super::morse::MorseParams;
use crate::error::{invalid, Result};
use crate::oplib::ladder;
use crate::specfun::{sym_eigen, symtridiag_eigh, SymmetricMatrix};

pub const DEFAULT_DIM: usize = 765;
/// The convergence check repeats the calculation at `dim − 64`.
pub const CONVERGENCE_DIM_STEP: usize = 64;
pub const CONVERGENCE_TOL: f64 = 1e-6;

/// Cosine eigenvalues closer than this fraction of `ω` belong to one multiplet.
const MULTIPLET_GAP: f64 = 1e-2;
/// A multiplet counts as a level of the central well when at least this much
/// of its total weight sits in `|x| < π/q`.
const CENTRAL_WEIGHT_MIN: f64 = 0.5;

/// Lowest levels of a truncated Fock-basis Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub dim: usize,
    pub energies: Vec<f64>,
    /// Number of numerically degenerate eigenvalues folded into each level
    /// (one per lattice well for the cosine model, always 1 for Morse).
    pub multiplicities: Vec<usize>,
    /// Largest level shift between `dim` and `dim − 64`.
    pub max_shift: f64,
    pub converged: bool,
}

struct Diagonalized {
    values: Vec<f64>,
    vectors: Option<Array2<f64>>,
    position_basis: Array2<f64>,
    positions: Vec<f64>,
}

/// `H = p²/2 + f(x)` with `x` the position operator of a Fock basis of
/// frequency `omega` centered at `center`.
fn diagonalize(dim: usize, omega: f64, center: f64, f: impl Fn(f64) -> f64, vectors: bool) -> Result<Diagonalized> {
    let x = symtridiag_eigh(&vec![0.0; dim], &ladder::x_offdiag(dim, omega))?;
    let u = x.vectors.expect("requested eigenvectors");
    let fx = Array1::from_iter(x.values.iter().map(|&xi| f(xi + center)));
    let scaled = &u * &fx.view().insert_axis(Axis(0));
    let potential = scaled.dot(&u.t());
    let h = SymmetricMatrix::from_array(&(ladder::kinetic(dim, omega) + potential))?;
    let eig = sym_eigen(&h, vectors)?;
    Ok(Diagonalized { values: eig.values, vectors: eig.vectors, position_basis: u, positions: x.values })
}

fn check_dims(dim: usize, min_dim: usize) -> Result<()> {
    if dim < min_dim {
        return Err(invalid(format!("Fock dimension must be at least {min_dim}, got {dim}")));
    }
    Ok(())
}

fn compare(dim: usize, levels: Vec<f64>, multiplicities: Vec<usize>, coarse: &[f64]) -> SpectrumTable {
    let max_shift = if coarse.len() < levels.len() {
        f64::INFINITY
    } else {
        levels.iter().zip(coarse).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    };
    SpectrumTable { dim, energies: levels, multiplicities, max_shift, converged: max_shift <= CONVERGENCE_TOL }
}

/// Quasi-bound levels of `p²/2 − g0² cos(q x)` in the `ω = g0 q` Fock basis.
///
/// On the open line the truncated basis covers several lattice wells, so each
/// quasi-bound level appears once per covered well, and partially covered
/// outer wells add isolated truncation states. Eigenvalues are grouped into
/// multiplets (gaps below `0.01 ω`); a multiplet is kept when at least half of
/// its weight lies in the central well, and its energy is the central-well
/// weighted mean.
pub fn cosine_numeric_fock(p: &CosineParams, dim: usize, n_levels: usize) -> Result<SpectrumTable> {
    check_dims(dim, 64)?;
    if n_levels > dim / 4 {
        return Err(invalid(format!("n_levels = {n_levels} exceeds dim/4 = {}", dim / 4)));
    }
    let fine = cosine_levels(p, dim, n_levels)?;
    let coarse = cosine_levels(p, dim - CONVERGENCE_DIM_STEP, n_levels)?;
    if fine.0.len() < n_levels {
        return Err(invalid(format!(
            "only {} quasi-bound levels resolved at dim {dim}, {n_levels} requested",
            fine.0.len()
        )));
    }
    Ok(compare(dim, fine.0, fine.1, &coarse.0))
}

fn cosine_levels(p: &CosineParams, dim: usize, n_levels: usize) -> Result<(Vec<f64>, Vec<usize>)> {
    let omega = p.omega();
    let (g0sq, q) = (p.g0sq(), p.q());
    let d = diagonalize(dim, omega, 0.0, |x| -g0sq * (q * x).cos(), true)?;
    let vectors = d.vectors.expect("requested eigenvectors");
    let half_cell = std::f64::consts::PI / q;
    let central: Vec<usize> = (0..dim).filter(|&i| d.positions[i].abs() < half_cell).collect();
    // weight of each eigenvector inside the central cell, in the position eigenbasis
    let in_position = d.position_basis.t().dot(&vectors);
    let weight = |k: usize| -> f64 { central.iter().map(|&i| in_position[[i, k]].powi(2)).sum() };

    let mut levels = Vec::new();
    let mut mult = Vec::new();
    let mut start = 0;
    while start < dim && levels.len() < n_levels {
        let mut end = start + 1;
        while end < dim && d.values[end] - d.values[end - 1] <= MULTIPLET_GAP * omega {
            end += 1;
        }
        let weights: Vec<f64> = (start..end).map(weight).collect();
        let total: f64 = weights.iter().sum();
        if total >= CENTRAL_WEIGHT_MIN {
            let mean = (start..end).zip(&weights).map(|(k, w)| w * d.values[k]).sum::<f64>() / total;
            levels.push(mean);
            mult.push(end - start);
        }
        start = end;
    }
    Ok((levels, mult))
}

/// Lowest bound levels of the Morse Hamiltonian in the `ω = sqrt(2) λ α`
/// Fock basis centered on the well.
pub fn morse_numeric_fock(p: &MorseParams, dim: usize, n_levels: usize) -> Result<SpectrumTable> {
    morse_numeric_fock_centered(p, p.b(), dim, n_levels)
}

/// As [`morse_numeric_fock`], with the basis centered at `center` instead of
/// the well minimum `b`.
pub fn morse_numeric_fock_centered(p: &MorseParams, center: f64, dim: usize, n_levels: usize) -> Result<SpectrumTable> {
    check_dims(dim, 256)?;
    if n_levels == 0 {
        return Err(invalid("n_levels must be at least 1"));
    }
    p.check_bound(n_levels - 1)?;
    let levels = |dim: usize| -> Result<Vec<f64>> {
        let (l2, alpha, b) = (p.lam() * p.lam(), p.alpha(), p.b());
        let d = diagonalize(dim, p.omega(), center, |x| l2 * (1.0 - (-alpha * (x - b)).exp()).powi(2), false)?;
        Ok(d.values[..n_levels].to_vec())
    };
    let fine = levels(dim)?;
    let coarse = levels(dim - CONVERGENCE_DIM_STEP)?;
    Ok(compare(dim, fine, vec![1; n_levels], &coarse))
}
