use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("singularity: {0}")]
    Singularity(String),

    /// Re F diverges logarithmically as theta -> 0.
    #[error(
        "forward divergence: the amplitude is singular at theta = {theta:e} (forward scattering)"
    )]
    ForwardDivergence { theta: f64 },

    #[error(
        "backscattering margin: |theta| = {theta} is within {margin:e} of pi; use the partial-wave method"
    )]
    BackscatteringMargin { theta: f64, margin: f64 },

    /// Requested accuracy not reached. Carries the best estimate found.
    #[error("accuracy not reached: estimate {estimate} with error {achieved:e} (requested {requested:e})")]
    Accuracy {
        estimate: f64,
        achieved: f64,
        requested: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
