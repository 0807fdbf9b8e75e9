use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("failed to parse `{path}`: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("influx expression `{expr}`: {message}")]
    Expression { expr: String, message: String },

    #[error("tridiagonal system is singular: pivot {pivot:e} at row {row}")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("explicit step unstable: margin {margin:.4} > 1, largest admissible dtau is {max_dtau:e}")]
    Stability { margin: f64, max_dtau: f64 },

    #[error("non-finite enthalpy at (row {row}, node {node}) in step {step}")]
    BlowUp { step: usize, row: usize, node: usize },

    #[error("Gram matrix is ill-conditioned (condition {condition:e}); increase the sample count, M = cN^2 with N the basis size")]
    IllConditioned { condition: f64 },

    #[error("{samples} samples cannot determine {basis} coefficients; choose M = cN^2 samples for a basis of size N")]
    TooFewSamples { samples: usize, basis: usize },

    #[error("sample {index} failed ({} of the campaign's samples failed): {source}", failed.len())]
    Sample {
        index: usize,
        /// Every failing sample index, ascending.
        failed: Vec<usize>,
        #[source]
        source: Box<Error>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("missing artifacts in {dir}: {missing:?}")]
    MissingArtifacts { dir: PathBuf, missing: Vec<String> },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Machine-readable code written into run manifests.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Validation { .. } => "validation",
            Error::Config(_) => "config",
            Error::Parse { .. } => "parse",
            Error::Expression { .. } => "expression",
            Error::SingularSystem { .. } => "singular_system",
            Error::Stability { .. } => "stability",
            Error::BlowUp { .. } => "blow_up",
            Error::IllConditioned { .. } => "ill_conditioned",
            Error::TooFewSamples { .. } => "too_few_samples",
            Error::Sample { source, .. } => source.code(),
            Error::Precondition(_) => "precondition",
            Error::OutOfRange(_) => "out_of_range",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::MissingArtifacts { .. } => "missing_artifacts",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }

    /// True for errors caused by the input configuration rather than the numerics.
    pub fn is_config_error(&self) -> bool {
        match self {
            Error::Validation { .. }
            | Error::Config(_)
            | Error::Parse { .. }
            | Error::Expression { .. }
            | Error::Stability { .. }
            | Error::TooFewSamples { .. }
            | Error::Precondition(_) => true,
            Error::Sample { source, .. } => source.is_config_error(),
            _ => false,
        }
    }
}
