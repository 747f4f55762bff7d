use thiserror::Error;

/// Errors raised by the exact-arithmetic, algebra and degeneration layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("limit diverges at t = 0{}", fmt_index(.at))]
    LimitDiverges { at: Option<(usize, usize, usize)> },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("lemma hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("`{name}` needs dimension at least {min}, got {got}")]
    DimTooSmall {
        name: String,
        min: usize,
        got: usize,
    },
    #[error("`{0}` needs a parameter alpha")]
    MissingParam(String),
    #[error("parameter not allowed for `{name}`: {reason}")]
    ForbiddenParam { name: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
}

fn fmt_index(at: &Option<(usize, usize, usize)>) -> String {
    match at {
        Some((i, j, k)) => format!(" at product ({}, {}, {})", i + 1, j + 1, k + 1),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable variant name, used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::BothZero => "BothZero",
            Error::LimitDiverges { .. } => "LimitDiverges",
            Error::Singular => "Singular",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::UnknownName(_) => "UnknownName",
            Error::DimTooSmall { .. } => "DimTooSmall",
            Error::MissingParam(_) => "MissingParam",
            Error::ForbiddenParam { .. } => "ForbiddenParam",
            Error::Parse(_) => "Parse",
        }
    }

    /// Whether the error is a property of the mathematical input rather
    /// than of malformed or inconsistent files and arguments.
    pub fn is_negative_result(&self) -> bool {
        matches!(
            self,
            Error::LimitDiverges { .. } | Error::HypothesisViolated(_)
        )
    }
}
