use crate::error::{invalid, Error, Result};
use crate::specfun::laguerre;

use super::cosine::ExpansionVariant;

/// `H = p²/2 + λ² (1 − e^{−α (x − b)})²`.
///
/// The displacement `b` only moves the well and never enters a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseParams {
    lam: f64,
    alpha: f64,
    b: f64,
}

impl MorseParams {
    pub fn new(lam: f64, alpha: f64, b: f64) -> Result<Self> {
        if !(lam > 0.0 && lam.is_finite()) {
            return Err(invalid(format!("lambda must be positive, got {lam}")));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(invalid(format!("alpha must be positive, got {alpha}")));
        }
        if !b.is_finite() {
            return Err(invalid("offset b must be finite"));
        }
        Ok(Self { lam, alpha, b })
    }

    pub fn lam(&self) -> f64 {
        self.lam
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `ω = sqrt(2) λ α`.
    pub fn omega(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.lam * self.alpha
    }

    /// Highest bound level `floor(sqrt(2) λ/α − 1/2)`, if any level is bound.
    pub fn n_max(&self) -> Option<usize> {
        let top = (std::f64::consts::SQRT_2 * self.lam / self.alpha - 0.5).floor();
        (top >= 0.0).then_some(top as usize)
    }

    pub(crate) fn check_bound(&self, n: usize) -> Result<()> {
        match self.n_max() {
            Some(top) if n <= top => Ok(()),
            n_max => Err(Error::UnboundLevel { n, n_max }),
        }
    }

    /// The centered potential as a [`crate::oplib::TaylorPotential`].
    pub fn potential(&self) -> crate::oplib::Morse {
        crate::oplib::Morse { lam: self.lam, alpha: self.alpha }
    }
}

/// Exact bound level `sqrt(2) λ α (n + 1/2) − (α²/2)(n + 1/2)²`.
pub fn morse_exact(p: &MorseParams, n: usize) -> Result<f64> {
    p.check_bound(n)?;
    let h = n as f64 + 0.5;
    Ok(p.omega() * h - 0.5 * p.alpha * p.alpha * h * h)
}

/// Self-RWA level of the Morse Hamiltonian:
///
/// `(ω/2)(n+1/2) + λ² e^{s} L_n(−2s) − 2λ² e^{s/4} L_n(−s/2) + λ²`,
/// with `s = α/(sqrt(2) λ)`.
pub fn morse_rwa_full(p: &MorseParams, n: usize) -> f64 {
    let l2 = p.lam * p.lam;
    let s = p.alpha / (std::f64::consts::SQRT_2 * p.lam);
    0.5 * p.omega() * (n as f64 + 0.5) + l2 * s.exp() * laguerre(n, -2.0 * s)
        - 2.0 * l2 * (0.25 * s).exp() * laguerre(n, -0.5 * s)
        + l2
}

/// Second order in `α/λ`: `c · sqrt(2) λ α (n + 1/2) + (7α²/16)(n² + n + 1/2)`
/// with `c = 3/4` as published and `c = 1` when re-derived from
/// [`morse_rwa_full`].
pub fn morse_rwa_second_order(p: &MorseParams, n: usize, variant: ExpansionVariant) -> f64 {
    let nf = n as f64;
    let prefactor = match variant {
        ExpansionVariant::Printed => 0.75,
        ExpansionVariant::Derivation => 1.0,
    };
    prefactor * p.omega() * (nf + 0.5) + 7.0 * p.alpha * p.alpha / 16.0 * (nf * nf + nf + 0.5)
}

/// Even-part effective potential in units of `λ²`: `1 + cosh(2αx) − 2 cosh(αx)`.
pub fn morse_veff(alpha: f64, x: f64) -> f64 {
    1.0 + (2.0 * alpha * x).cosh() - 2.0 * (alpha * x).cosh()
}

/// [`morse_veff`] normalized to its value at `x = 1`.
pub fn morse_veff_normalized(alpha: f64, x: f64) -> Result<f64> {
    let at_one = morse_veff(alpha, 1.0);
    if at_one == 0.0 || !at_one.is_finite() {
        return Err(Error::DegenerateNormalization);
    }
    Ok(morse_veff(alpha, x) / at_one)
}
