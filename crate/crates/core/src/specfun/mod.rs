//! Special functions and numeric kernels.

mod bessel;
mod eigen;
mod hyper;
mod poly;
mod quadrature;

pub use bessel::bessel_j0;
pub use eigen::{sym_eigen, symtridiag_eigen, symtridiag_eigh, symtridiag_lowest, Eigen, SymmetricMatrix};
pub use hyper::{hyp2f1_terminating, hyp2f1_terminating_exact};
pub use poly::{hermite, hermite_normalized, laguerre};
pub use quadrature::{gauss_hermite, QuadratureRule, MAX_GAUSS_HERMITE_ORDER};
