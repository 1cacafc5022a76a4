//! Operator-algebra kernel: truncated ladder operators, Weyl/normal ordering
//! combinatorics, Taylor potentials and the Fock-basis diagonal-element engine.

mod diagonal;
pub(crate) mod ladder;
mod ordering;
mod potential;

pub use diagonal::{
    default_oracle_order, fock_diagonal, min_oracle_order, fock_diagonal_oracle, fock_diagonal_oracle_fn, rwa_energy,
    SeriesControl, DEFAULT_KMAX, DEFAULT_TOL,
};
pub use ladder::{build_ladder, LadderRep};
pub use ordering::{
    binomial, diag_power_expectation, diag_power_expectation_f64, falling_factorial, falling_factorial_f64,
    weyl_to_normal, OrderingCoeffs,
};
pub use potential::{Cosh, Cosine, Gaussian, Morse, Polynomial, SumPotential, TaylorPotential};
