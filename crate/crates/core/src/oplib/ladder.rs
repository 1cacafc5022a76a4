use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Truncated Fock-space matrices of the self oscillator at frequency `omega`.
///
/// `x = (a† + a)/sqrt(2ω)` and `p = i sqrt(ω/2) (a† − a)`. The commutator
/// `[a, a†]` equals the identity except in the last diagonal entry, where the
/// truncation leaves `-(dim − 1)`.
#[derive(Debug, Clone)]
pub struct LadderRep {
    dim: usize,
    omega: f64,
    a: Array2<f64>,
    a_dag: Array2<f64>,
    n_op: Array2<f64>,
    x_op: Array2<f64>,
    p_op: Array2<Complex64>,
}

pub fn build_ladder(dim: usize, omega: f64) -> Result<LadderRep> {
    if dim < 2 {
        return Err(invalid(format!("ladder dimension must be >= 2, got {dim}")));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(invalid(format!("oscillator frequency must be positive, got {omega}")));
    }
    let a = Array2::from_shape_fn((dim, dim), |(i, j)| if j == i + 1 { (j as f64).sqrt() } else { 0.0 });
    let a_dag = a.t().to_owned();
    let n_op = Array2::from_shape_fn((dim, dim), |(i, j)| if i == j { i as f64 } else { 0.0 });
    let x_op = (&a_dag + &a) / (2.0 * omega).sqrt();
    let p_scale = (omega / 2.0).sqrt();
    let p_op = (&a_dag - &a).mapv(|v| Complex64::new(0.0, p_scale * v));
    Ok(LadderRep { dim, omega, a, a_dag, n_op, x_op, p_op })
}

impl LadderRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn a(&self) -> &Array2<f64> {
        &self.a
    }

    pub fn a_dag(&self) -> &Array2<f64> {
        &self.a_dag
    }

    pub fn n_op(&self) -> &Array2<f64> {
        &self.n_op
    }

    pub fn x_op(&self) -> &Array2<f64> {
        &self.x_op
    }

    pub fn p_op(&self) -> &Array2<Complex64> {
        &self.p_op
    }

    /// `a·a† − a†·a` in the truncated space.
    pub fn commutator(&self) -> Array2<f64> {
        self.a.dot(&self.a_dag) - self.a_dag.dot(&self.a)
    }

    /// Off-diagonal of the tridiagonal position matrix, `sqrt((k+1)/(2ω))`.
    pub fn x_offdiag(&self) -> Vec<f64> {
        x_offdiag(self.dim, self.omega)
    }

    /// `p²/2` with the untruncated number-basis elements: `(ω/4)(2k+1)` on the
    /// diagonal and `-(ω/4) sqrt((k+1)(k+2))` two places off it.
    pub fn kinetic(&self) -> Array2<f64> {
        kinetic(self.dim, self.omega)
    }
}

pub(crate) fn x_offdiag(dim: usize, omega: f64) -> Vec<f64> {
    (1..dim).map(|k| (k as f64 / (2.0 * omega)).sqrt()).collect()
}

pub(crate) fn kinetic(dim: usize, omega: f64) -> Array2<f64> {
    let q = omega / 4.0;
    Array2::from_shape_fn((dim, dim), |(i, j)| {
        if i == j {
            q * (2 * i + 1) as f64
        } else if j == i + 2 || i == j + 2 {
            let k = i.min(j) as f64;
            -q * ((k + 1.0) * (k + 2.0)).sqrt()
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_entries() {
        let l = build_ladder(3, 1.0).unwrap();
        assert_eq!(l.a()[[0, 1]], 1.0);
        assert_eq!(l.a()[[1, 2]], 2f64.sqrt());
        assert_eq!(l.a().sum(), 1.0 + 2f64.sqrt());
        assert_eq!(l.a_dag()[[2, 1]], 2f64.sqrt());
        assert_eq!(l.n_op()[[2, 2]], 2.0);
    }

    #[test]
    fn position_two_level() {
        let l = build_ladder(2, 2.0).unwrap();
        assert_eq!(l.x_op()[[0, 1]], 0.5);
        assert_eq!(l.x_op()[[1, 0]], 0.5);
        assert_eq!(l.x_op()[[0, 0]], 0.0);
    }

    #[test]
    fn operator_relations() {
        let omega = 1.7;
        let l = build_ladder(12, omega).unwrap();
        let x = (l.a_dag() + l.a()) / (2.0 * omega).sqrt();
        let p_scale = (omega / 2.0).sqrt();
        for ((i, j), v) in l.x_op().indexed_iter() {
            assert!((v - x[[i, j]]).abs() <= 1e-15);
            let p = l.p_op()[[i, j]];
            assert_eq!(p.re, 0.0);
            assert!((p.im - p_scale * (l.a_dag()[[i, j]] - l.a()[[i, j]])).abs() <= 1e-15);
        }
        // N = a†a
        let n = l.a_dag().dot(l.a());
        for ((i, j), v) in n.indexed_iter() {
            assert!((v - l.n_op()[[i, j]]).abs() < 1e-13);
        }
        // p² from matrices agrees with the analytic kinetic term away from the edge
        let p2 = l.p_op().dot(l.p_op());
        let t = l.kinetic();
        for i in 0..10 {
            for j in 0..10 {
                assert!((p2[[i, j]].re / 2.0 - t[[i, j]]).abs() < 1e-13);
                assert!(p2[[i, j]].im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn commutator_is_identity_except_corner() {
        let l = build_ladder(16, 1.0).unwrap();
        let c = l.commutator();
        for i in 0..15 {
            for j in 0..15 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((c[[i, j]] - want).abs() < 1e-13);
            }
        }
        assert!((c[[15, 15]] + 15.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(build_ladder(1, 1.0).is_err());
        assert!(build_ladder(4, 0.0).is_err());
        assert!(build_ladder(4, -1.0).is_err());
    }
}
