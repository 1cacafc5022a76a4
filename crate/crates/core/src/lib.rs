//! Self rotating-wave approximation (self-RWA) for one-dimensional Hamiltonians
//! `H = p²/2 + V(x)`.
//!
//! The quadratic Taylor term of `V` defines a harmonic oscillator (the "self
//! oscillator") whose Fock basis is used to evaluate diagonal matrix elements of
//! the remaining potential. Keeping only the non-rotating, number-conserving part
//! of `V` yields closed-form level estimates that coincide with first-order
//! perturbation theory around the self oscillator.
//!
//! Modules:
//! - [`oplib`]: ladder operators, Weyl/normal ordering combinatorics and the
//!   generic diagonal-element engine.
//! - [`specfun`]: orthogonal polynomials, Bessel `J₀`, terminating `₂F₁`,
//!   Gauss–Hermite quadrature and symmetric eigensolvers.
//! - [`models`]: the cosine (Mathieu) and Morse models, exact references and
//!   error sweeps.
//! - [`identities`]: number-basis sum identities checked against quadrature.
//!
//! Units are `ħ = m = 1` throughout.

pub mod error;
pub mod identities;
pub mod models;
pub mod oplib;
pub mod par;
pub mod specfun;

pub use error::{Error, Result};
pub use par::Exec;
