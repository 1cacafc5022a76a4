use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Self-RWA spectra, exact references and error sweeps as CSV.
#[derive(Debug, Parser)]
#[command(name = "selfrwa", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bloch bands of p²/2 − g0² cos(q x) over the first Brillouin zone.
    Bands(BandsArgs),
    /// Absolute error of the cosine closed form against the exact levels.
    CosineErrors(CosineArgs),
    /// Relative error of the Morse closed forms against the exact levels.
    MorseErrors(MorseArgs),
    /// Normalized even-part effective potential of the Morse model.
    Veff(VeffArgs),
    /// Number-basis sum identities checked against quadrature.
    Identities(SuiteArgs),
    /// Cross-oracle self checks with a pass/fail table.
    Selftest(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BandsArgs {
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub g0sq: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long, default_value_t = 101)]
    pub kpoints: usize,
    #[arg(long, default_value_t = 6)]
    pub bands: usize,
    /// Plane waves m = −mmax..=mmax.
    #[arg(long, default_value_t = 40)]
    pub mmax: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reference {
    /// Brillouin-zone mean of each Bloch band.
    BandMean,
    /// Central-well levels of the truncated Fock diagonalization.
    Fock,
}

#[derive(Debug, Args)]
pub struct CosineArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub q: f64,
    /// Explicit g0² values (comma separated); overrides the range.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub g0sq: Vec<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub g0sq_min: f64,
    #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
    pub g0sq_max: f64,
    /// Number of grid points between the range ends, inclusive.
    #[arg(long, default_value_t = 40)]
    pub steps: usize,
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
    #[arg(long, default_value_t = 765)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = Reference::BandMean)]
    pub reference: Reference,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Printed,
    Derivation,
    Full,
}

#[derive(Debug, Args)]
pub struct MorseArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub lambda_min: f64,
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    pub lambda_max: f64,
    #[arg(long, default_value_t = 19)]
    pub steps: usize,
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
    #[arg(long, value_enum, default_value_t = Variant::Derivation)]
    pub variant: Variant,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VeffArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 1.0, 10.0], allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 121)]
    pub steps: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Agreement required between each sum and its oracle.
    #[arg(long, default_value_t = 1e-8, allow_negative_numbers = true)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}
