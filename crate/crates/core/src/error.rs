use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("iteration did not converge: {0}")]
    NonConvergence(String),
    #[error("the zero function has no {0}")]
    ZeroFunction(&'static str),
    #[error("division by (t - 0) with nonzero constant term")]
    SingularAtZero,
    #[error("precision exhausted: need order {needed}, have {available}")]
    PrecisionExhausted { needed: usize, available: usize },
    #[error("exponent mismatch: expected {expected}, found {found}")]
    ExponentMismatch { expected: String, found: String },
    #[error("g0 must satisfy g0(0) = 1, got {0}")]
    InvalidG0(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("Q_{n} is not strictly inside Q_{next}", next = .n + 1)]
    StrictNestingViolated { n: usize },
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent is not linear in z: {0}")]
    NonlinearExponent(String),
    #[error("value is not exactly representable: {0}")]
    NotExact(String),
    #[error("order {requested} exceeds the cap {cap}")]
    OrderCapExceeded { requested: usize, cap: usize },
    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),
}

impl Error {
    /// Stable machine-readable name used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonConvergence(_) => "NonConvergence",
            Error::ZeroFunction(_) => "ZeroFunction",
            Error::SingularAtZero => "SingularAtZero",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::ExponentMismatch { .. } => "ExponentMismatch",
            Error::InvalidG0(_) => "InvalidG0",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::StrictNestingViolated { .. } => "StrictNestingViolated",
            Error::InvalidRegion(_) => "InvalidRegion",
            Error::Syntax { .. } => "SyntaxError",
            Error::NonlinearExponent(_) => "NonlinearExponent",
            Error::NotExact(_) => "NotExact",
            Error::OrderCapExceeded { .. } => "OrderCapExceeded",
            Error::NotInvariant(_) => "NotInvariant",
        }
    }
}
