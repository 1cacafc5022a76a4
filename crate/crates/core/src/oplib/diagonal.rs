use super::potential::TaylorPotential;
use crate::error::{invalid, Error, Result};
use crate::specfun::{gauss_hermite, hermite_normalized, MAX_GAUSS_HERMITE_ORDER};

pub const DEFAULT_TOL: f64 = 1e-14;
pub const DEFAULT_KMAX: usize = 200;

/// Truncation policy for the Taylor double sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Stop once the last two outer terms are each below `tol · |sum|`.
    pub tol: f64,
    /// Hard cap on the number of terms per summation index.
    pub kmax: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, kmax: DEFAULT_KMAX }
    }
}

/// Full diagonal element `<n|V(x)|n>` in the Fock basis of frequency `omega`:
///
/// `Σ_l 1/((2ω)^l 2^l l!) Σ_j V^(2j+2l)(0) / ((2ω)^j j!²) · n!/(n−j)!`
///
/// The inner sum is finite (`j <= n`); the outer one is truncated by `ctl`.
pub fn fock_diagonal(v: &dyn TaylorPotential, omega: f64, n: usize, ctl: SeriesControl) -> Result<f64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(invalid(format!("frequency must be positive, got {omega}")));
    }
    if !(ctl.tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {}", ctl.tol)));
    }
    if ctl.kmax < 4 {
        return Err(invalid(format!("kmax must be at least 4, got {}", ctl.kmax)));
    }
    let two_omega = 2.0 * omega;
    let j_top = n.min(ctl.kmax);
    // w_j = n!/(n-j)! / (j!² (2ω)^j)
    let mut inner_weights = Vec::with_capacity(j_top + 1);
    let mut w = 1.0;
    for j in 0..=j_top {
        inner_weights.push(w);
        w *= (n - j) as f64 / (((j + 1) * (j + 1)) as f64 * two_omega);
    }
    // Polynomials are summed exactly up to their degree; zero terms along the
    // way must not trip the tail test.
    let exact_top = v.even_order_bound().filter(|&b| b <= ctl.kmax && n <= ctl.kmax);
    let l_top = exact_top.unwrap_or(ctl.kmax);

    let mut coeffs: Vec<f64> = Vec::new();
    let mut coeff = |s: usize| -> f64 {
        while coeffs.len() <= s {
            coeffs.push(v.even_coeff(coeffs.len()));
        }
        coeffs[s]
    };

    let mut acc = 0.0;
    let mut outer = 1.0; // 1/((2ω)^l 2^l l!)
    let mut prev_small = false;
    let mut last_term = f64::NAN;
    for l in 0..=l_top {
        if l > 0 {
            outer /= two_omega * 2.0 * l as f64;
        }
        let inner: f64 = inner_weights.iter().enumerate().map(|(j, w)| w * coeff(j + l)).sum();
        let term = outer * inner;
        if !term.is_finite() {
            return Err(Error::TruncationFailure { partial: acc, last_term: term, terms: l });
        }
        acc += term;
        last_term = term;
        if exact_top.is_some() {
            continue;
        }
        let small = term.abs() <= ctl.tol * acc.abs();
        if small && prev_small {
            return Ok(acc);
        }
        prev_small = small;
    }
    if exact_top.is_some() {
        return Ok(acc);
    }
    Err(Error::TruncationFailure { partial: acc, last_term, terms: l_top + 1 })
}

/// Smallest quadrature order accepted by the oracle for level `n`.
pub fn min_oracle_order(n: usize) -> usize {
    2 * n + 8
}

/// Default oracle order: comfortably above the minimum for entire potentials.
pub fn default_oracle_order(n: usize) -> usize {
    (2 * n + 80).min(MAX_GAUSS_HERMITE_ORDER)
}

/// Gauss–Hermite evaluation of `<n|V(x)|n>`:
/// `∫ V(u/√ω) e^{−u²} H_n(u)² / (2^n n! √π) du`.
pub fn fock_diagonal_oracle(v: &dyn TaylorPotential, omega: f64, n: usize, quad_order: usize) -> Result<f64> {
    fock_diagonal_oracle_fn(|x| v.value_at(x), omega, n, quad_order)
}

/// [`fock_diagonal_oracle`] for an arbitrary function of position.
pub fn fock_diagonal_oracle_fn(f: impl Fn(f64) -> f64, omega: f64, n: usize, quad_order: usize) -> Result<f64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(invalid(format!("frequency must be positive, got {omega}")));
    }
    if quad_order < min_oracle_order(n) {
        return Err(invalid(format!(
            "quadrature order {quad_order} too small for level {n} (need >= {})",
            min_oracle_order(n)
        )));
    }
    let rule = gauss_hermite(quad_order)?;
    let scale = omega.sqrt().recip();
    Ok(rule.integrate(|u| {
        let h = hermite_normalized(n, u);
        f(u * scale) * h * h
    }))
}

/// Self-RWA level: `(ω/2)(n + 1/2) + <n|V|n>` with `ω = sqrt(V''(0))`.
///
/// This is the self oscillator's kinetic expectation plus the full potential
/// diagonal, i.e. first-order perturbation theory around the self oscillator.
pub fn rwa_energy(v: &dyn TaylorPotential, n: usize) -> Result<f64> {
    let curvature = v.curvature();
    if !(curvature > 0.0) {
        return Err(Error::NoSelfOscillator { curvature });
    }
    let omega = curvature.sqrt();
    let diag = fock_diagonal(v, omega, n, SeriesControl::default())?;
    Ok(0.5 * omega * (n as f64 + 0.5) + diag)
}
