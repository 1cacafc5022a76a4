use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A Taylor double sum did not meet its tail criterion within the term cap.
    #[error("series truncation failed after {terms} terms (partial value {partial:e}, last term {last_term:e})")]
    TruncationFailure {
        partial: f64,
        last_term: f64,
        terms: usize,
    },

    #[error("potential curvature {curvature} is not positive; no self oscillator exists")]
    NoSelfOscillator { curvature: f64 },

    #[error("eigensolver did not converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },

    #[error("Pochhammer pole: (c)_k vanishes at k = {index}")]
    Pole { index: usize },

    #[error("level {n} is not bound (highest bound level: {})", fmt_nmax(*.n_max))]
    UnboundLevel { n: usize, n_max: Option<usize> },

    #[error("at grid point {param}: {source}")]
    AtGridPoint { param: f64, source: Box<Error> },

    #[error("effective potential normalization is degenerate (V_eff(1) = 0)")]
    DegenerateNormalization,
}

fn fmt_nmax(n_max: Option<usize>) -> String {
    n_max.map_or_else(|| "none".to_string(), |n| n.to_string())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
