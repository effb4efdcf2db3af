use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("coefficient not in field: {0}")]
    CoefficientNotInField(String),

    #[error("non-parallel relation: {0}")]
    NonParallel(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("not finite dimensional at bound D = {bound} (irreducible path {witness} reaches the bound); raise --degree-bound")]
    NotFiniteDimensional { bound: usize, witness: String },

    #[error("completion exceeded rule budget of {0} rules")]
    RuleBudget(usize),

    #[error("degree overflow: path of length {length} exceeds bound D = {bound}")]
    DegreeOverflow { length: usize, bound: usize },

    #[error("support cap exceeded: circuits of size up to {needed} possible, cap is {cap}")]
    SupportCapExceeded { needed: usize, cap: usize },

    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),

    #[error("non-associative table: (b{0} b{1}) b{2} != b{0} (b{1} b{2})")]
    NonAssociative(usize, usize, usize),

    #[error("idempotent axioms fail: {0}")]
    IdempotentAxioms(String),

    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),

    #[error("character violates homotopy constraints: {0}")]
    CharacterViolation(String),

    #[error("presentations disagree on the algebra: {0}")]
    PresentationsDisagree(String),

    #[error("no minimal presentation supplied")]
    NoMinimalPresentation,

    #[error("operation needs a quiver presentation: {0}")]
    NoPresentation(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Process exit code: 1 usage/parse, 2 soundness bound exceeded, 3 invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotFiniteDimensional { .. }
            | Error::RuleBudget(_)
            | Error::DegreeOverflow { .. }
            | Error::SupportCapExceeded { .. }
            | Error::SearchSpaceTooLarge(_) => 2,
            Error::InvariantViolation(_) => 3,
            _ => 1,
        }
    }
}
