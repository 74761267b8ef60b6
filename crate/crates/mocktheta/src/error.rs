use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the evaluators.
///
/// Evaluators refuse (rather than regularize) arguments too close to a pole
/// locus, so identity checks never silently average over a singularity.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument within {distance:.3e} of pole locus {locus} (guard {guard:.3e})")]
    PoleProximity {
        locus: String,
        distance: f64,
        guard: f64,
    },

    #[error("zero divisor: |{what}| = {magnitude:.3e} below tolerance")]
    ZeroDivisor { what: String, magnitude: f64 },

    #[error("series decay budget exceeded: needs {needed:.3e} of cancellation headroom")]
    DecayBudget { needed: f64 },

    #[error("unsupported index: {0}")]
    UnsupportedIndex(String),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("integrand evaluated non-finite at node x = {node}")]
    Evaluation { node: Complex64 },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parameter error for identity `{id}`: {message}")]
    Params { id: String, message: String },

    #[error("sampler starvation for identity `{id}` after {attempts} attempts")]
    SamplerStarvation { id: String, attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
