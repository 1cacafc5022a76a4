use std::f64::consts::PI;

use super::eigen::symtridiag_first_components;
use crate::error::{invalid, Result};

pub const MAX_GAUSS_HERMITE_ORDER: usize = 400;

/// Gauss–Hermite rule for `∫ f(x) e^{-x²} dx` over the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Ascending nodes.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Golub–Welsch construction: nodes are the eigenvalues of the Jacobi matrix
/// with off-diagonals `sqrt(j/2)`, weights are `sqrt(pi)` times the squared
/// first eigenvector components.
pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_GAUSS_HERMITE_ORDER).contains(&order) {
        return Err(invalid(format!(
            "Gauss-Hermite order {order} outside 1..={MAX_GAUSS_HERMITE_ORDER}"
        )));
    }
    let diag = vec![0.0; order];
    let off: Vec<f64> = (1..order).map(|j| (j as f64 / 2.0).sqrt()).collect();
    let (mut nodes, first) = symtridiag_first_components(&diag, &off)?;
    let mut weights: Vec<f64> = first.iter().map(|v| PI.sqrt() * v * v).collect();

    // The rule is symmetric; fold the two halves together.
    for i in 0..order / 2 {
        let j = order - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}
