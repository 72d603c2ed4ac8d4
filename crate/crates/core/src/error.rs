use thiserror::Error;

/// Errors produced by state constructors and engine operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A photon index exceeded the configured cutoff.
    #[error("photon number {index} exceeds the cutoff n_max = {n_max}")]
    CutoffExceeded { index: usize, n_max: usize },

    /// The cutoff cannot hold the requested state within the truncation-tail
    /// bound. `required` is the smallest admissible `n_max`.
    #[error("cutoff n_max = {n_max} too small; need n_max >= {required}")]
    CutoffTooSmall { n_max: usize, required: usize },

    /// Two objects with different cutoffs were combined.
    #[error("cutoff mismatch: n_max = {left} vs n_max = {right}")]
    CutoffMismatch { left: usize, right: usize },

    /// Attempted to normalize a state with zero norm.
    #[error("cannot normalize a zero state")]
    ZeroState,

    /// Cutoff outside the supported range (factorial tables stop at 170).
    #[error("invalid cutoff {0}: n_max must lie in 1..=170")]
    InvalidCutoff(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
