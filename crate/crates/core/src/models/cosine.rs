use crate::error::{invalid, Result};
use crate::specfun::laguerre;

/// `H = p²/2 − g0² cos(q x)`; the self oscillator has `ω = g0 q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineParams {
    g0: f64,
    q: f64,
}

impl CosineParams {
    pub fn new(g0: f64, q: f64) -> Result<Self> {
        if !(g0 > 0.0 && g0.is_finite()) {
            return Err(invalid(format!("g0 must be positive, got {g0}")));
        }
        if !(q > 0.0 && q.is_finite()) {
            return Err(invalid(format!("q must be positive, got {q}")));
        }
        Ok(Self { g0, q })
    }

    /// Parameterized by the potential amplitude `g0²`.
    pub fn from_g0sq(g0sq: f64, q: f64) -> Result<Self> {
        if !(g0sq > 0.0) {
            return Err(invalid(format!("g0² must be positive, got {g0sq}")));
        }
        Self::new(g0sq.sqrt(), q)
    }

    pub fn g0(&self) -> f64 {
        self.g0
    }

    pub fn g0sq(&self) -> f64 {
        self.g0 * self.g0
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn omega(&self) -> f64 {
        self.g0 * self.q
    }

    /// The model potential as a [`crate::oplib::TaylorPotential`].
    pub fn potential(&self) -> crate::oplib::Cosine {
        crate::oplib::Cosine { amplitude: -self.g0sq(), q: self.q }
    }
}

/// Which second-order expansion to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionVariant {
    /// The coefficients as published.
    Printed,
    /// The expansion re-derived from the full closed form.
    Derivation,
}

/// `(g0 q/2)(n + 1/2) − g0² e^{−q/(4 g0)} L_n(q/(2 g0))`.
pub fn cosine_rwa_energy(p: &CosineParams, n: usize) -> f64 {
    let ratio = p.q / p.g0;
    0.5 * p.omega() * (n as f64 + 0.5) - p.g0sq() * (-0.25 * ratio).exp() * laguerre(n, 0.5 * ratio)
}

/// Second-order expansion of [`cosine_rwa_energy`] in `q/g0`:
/// `g0 q (n + 1/2) − (q²/16)(n² + n + 1/2) − g0²`.
///
/// Expanding the closed form gives back the published coefficients, so both
/// variants evaluate the same expression.
pub fn cosine_rwa_second_order(p: &CosineParams, n: usize, variant: ExpansionVariant) -> f64 {
    let nf = n as f64;
    let anharmonic = p.q * p.q / 16.0 * (nf * nf + nf + 0.5);
    match variant {
        ExpansionVariant::Printed | ExpansionVariant::Derivation => {
            p.omega() * (nf + 0.5) - anharmonic - p.g0sq()
        }
    }
}

/// Self-RWA level of `−Σ_k g_k² cos(q_k x)` with `ω² = Σ_k g_k² q_k²`.
pub fn superlattice_rwa_energy(components: &[(f64, f64)], n: usize) -> Result<f64> {
    if components.is_empty() {
        return Err(invalid("superlattice needs at least one component"));
    }
    if components.iter().any(|&(g, q)| !(g > 0.0 && q > 0.0)) {
        return Err(invalid("superlattice amplitudes and wave numbers must be positive"));
    }
    let omega = components.iter().map(|&(g, q)| g * g * q * q).sum::<f64>().sqrt();
    let wells: f64 = components
        .iter()
        .map(|&(g, q)| {
            let s = q * q / omega;
            -g * g * (-0.25 * s).exp() * laguerre(n, 0.5 * s)
        })
        .sum();
    Ok(0.5 * omega * (n as f64 + 0.5) + wells)
}
