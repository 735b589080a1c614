use thiserror::Error;

/// Errors raised across the solver pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AiryError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "aliasing: {samples} samples cannot resolve |n| <= {max_index} (need at least {needed})"
    )]
    Aliasing {
        samples: usize,
        max_index: usize,
        needed: usize,
    },

    #[error("non-finite value encountered in {0}")]
    NonFinite(String),

    #[error("divergent boundary trace of order {order}: {reason}")]
    DivergentTrace { order: usize, reason: String },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("singular implicit system for boundary family `{family}`: {detail}")]
    SingularSystem { family: String, detail: String },

    #[error(
        "instability in reference solver for `{family}` at step {step} (t = {time:.6e}): {detail}"
    )]
    Instability {
        family: String,
        step: usize,
        time: f64,
        detail: String,
    },

    #[error("fit error: {0}")]
    Fit(String),

    #[error("insufficient accuracy: {0}")]
    Accuracy(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for AiryError {
    fn from(err: std::io::Error) -> Self {
        AiryError::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, AiryError>;
