use alloc::string::String;

/// Errors raised by the algebraic layers.
///
/// The `kind` string of each variant is stable and is what the command line
/// reports in its structured error output.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operands live in different rings or fields: {0}")]
    MixedContext(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("expected univariate polynomial data")]
    NotUnivariate,
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("relation {index} violated: {detail}")]
    RelationViolated { index: usize, detail: String },
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("module is not finite-dimensional over the base field")]
    InfiniteDimensional,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl AlgebraError {
    pub fn kind(&self) -> &'static str {
        match self {
            AlgebraError::MixedContext(_) => "MixedContext",
            AlgebraError::DivisionByZeroPoly => "DivisionByZeroPoly",
            AlgebraError::ShapeMismatch(_) => "ShapeMismatch",
            AlgebraError::NotUnivariate => "NotUnivariate",
            AlgebraError::SizeLimit(_) => "SizeLimit",
            AlgebraError::RelationViolated { .. } => "RelationViolated",
            AlgebraError::InvalidMorphism(_) => "InvalidMorphism",
            AlgebraError::InfiniteDimensional => "InfiniteDimensional",
            AlgebraError::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = core::result::Result<T, AlgebraError>;

pub(crate) fn shape(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::ShapeMismatch(msg.into())
}

pub(crate) fn mixed(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::MixedContext(msg.into())
}
