use thiserror::Error;

/// Errors shared by all modules. Every variant names the violated
/// precondition and carries the offending quantities.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum AqsError {
    #[error("zero norm: vector norm {norm:.3e} is below the floor {floor:.3e}")]
    ZeroNorm { norm: f64, floor: f64 },

    #[error("non-finite component at index {index}")]
    NonFinite { index: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("operator is not Hermitian within {tol:.3e} (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("mode {mode} out of range: context has {modes} modes")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("portfolio too small: need at least {need} operators, got {got}")]
    PortfolioTooSmall { need: usize, got: usize },

    #[error("state annihilated: image norm {norm:.3e} fell below the floor {floor:.3e}")]
    StateAnnihilated { norm: f64, floor: f64 },

    #[error("constant vector: zero variance leaves the statistic undefined")]
    ConstantVector,

    #[error("too few points: need at least {need}, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("score {value} out of range [1, 8] (model {model}, item {item})")]
    ScoreOutOfRange {
        value: f64,
        model: String,
        item: String,
    },

    #[error("invalid value for `{field}`: {reason}")]
    InvalidField { field: String, reason: String },
}

impl AqsError {
    pub fn invalid_field(field: impl Into<String>, reason: impl Into<String>) -> Self {
        AqsError::InvalidField {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, AqsError>;
