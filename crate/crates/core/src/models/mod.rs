//! The cosine (Mathieu) and Morse models: closed-form self-RWA spectra,
//! second-order expansions, exact references and error sweeps.

mod bands;
mod cosine;
mod fock;
mod morse;
mod sweep;

pub use bands::{band_means, mathieu_bands, mathieu_bands_with, BandGrid, BandStructure};
pub use cosine::{cosine_rwa_energy, cosine_rwa_second_order, superlattice_rwa_energy, CosineParams, ExpansionVariant};
pub use fock::{
    cosine_numeric_fock, morse_numeric_fock, morse_numeric_fock_centered, SpectrumTable, CONVERGENCE_DIM_STEP,
    CONVERGENCE_TOL, DEFAULT_DIM,
};
pub use morse::{
    morse_exact, morse_rwa_full, morse_rwa_second_order, morse_veff, morse_veff_normalized, MorseParams,
};
pub use sweep::{
    cosine_error_rows, error_sweep_cosine, morse_error_rows, error_sweep_cosine_with, error_sweep_morse, error_sweep_morse_with,
    CosineReference, ErrorKind, ErrorRow, ErrorTable, MorseApprox, BAND_MEAN_K_SAMPLES,
};
