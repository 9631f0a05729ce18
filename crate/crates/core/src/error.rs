use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("not an ideal")]
    NotAnIdeal,
    #[error("no weight layout")]
    NoLayout,
    #[error("layout is not a Carnot grading (fails at weight {0})")]
    NotCarnot(usize),
    #[error("form is not closed")]
    NotClosed,
    #[error("classes are linearly dependent in cohomology")]
    Dependent,
    #[error("singular matrix")]
    Singular,
    #[error("map does not extend to an automorphism")]
    DoesNotExtend,
    #[error("zero vector")]
    ZeroVector,
    #[error("abelian algebra has no canonical central ideal")]
    Abelian,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
