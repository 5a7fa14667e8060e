use thiserror::Error;

use crate::code::AmbientShape;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unrecognised ring token `{0}` (expected 0, 1, u, v, 1+u or u+1)")]
    BadToken(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch {
        left: AmbientShape,
        right: AmbientShape,
    },

    #[error("invalid ambient shape: {0}")]
    InvalidShape(String),

    #[error("ambient space has Gray length {big_n}, above the enumeration bound {limit}")]
    AmbientTooLarge { big_n: usize, limit: usize },

    #[error("code has 2^{dimension} codewords, above the materialisation bound 2^{limit}")]
    TooManyCodewords { dimension: usize, limit: usize },

    #[error("operation needs a nonzero codeword but the code is {{0}}")]
    TrivialCode,

    #[error("internal verification failed: {0}")]
    InternalVerificationFailure(String),

    #[error("MacWilliams transform is not integral: {0}")]
    NonIntegralTransform(String),

    #[error("code has all-zero columns: {0}")]
    ZeroColumnPresent(String),

    #[error("code is not one-Lee-weight")]
    NotOneWeight,

    #[error("code is not two-Lee-weight")]
    NotTwoWeight,

    #[error("code is not projective (dual minimum Lee weight {0:?})")]
    NotProjective(Option<u32>),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("word length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("search space too large: 2^{log2_candidates} candidate tuples exceeds 2^{limit}")]
    SpaceTooLarge { log2_candidates: u64, limit: u64 },

    #[error("classification violated: unexpected survivors {unexpected:?}, missing {missing:?}")]
    ClassificationViolation {
        unexpected: Vec<String>,
        missing: Vec<String>,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
