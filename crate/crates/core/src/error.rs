use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("negative exponent in monomial")]
    NegativeExponent,

    #[error("operation undefined on the zero binomial")]
    ZeroBinomial,

    #[error("invalid term order: {0}")]
    InvalidOrder(String),

    #[error("{what}: step cap of {cap} exceeded")]
    StepCapExceeded { what: &'static str, cap: usize },

    #[error("ideal is not zero-dimensional (variable x{} has no pure-power leading term)", .variable + 1)]
    NotZeroDimensional { variable: usize },

    #[error("order of generator {} exceeds p^{cap}; the presentation may not define a finite p-group", .variable + 1)]
    OrderCapExceeded { variable: usize, cap: u32 },

    #[error("standard monomial count exceeds cap {cap}")]
    CountCapExceeded { cap: u64 },

    #[error("Groebner basis shape violation: {0}")]
    ShapeViolation(String),

    #[error("no variable ordering gives the p-basis shape: {0}")]
    NoValidPermutation(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid module spec: {0}")]
    InvalidSpec(String),

    #[error("infinite length must be resolved before building")]
    UnresolvedInfiniteLength,

    #[error("sentinel stabilisation did not converge within {0} iterations")]
    StabilizationFailed(usize),
}
