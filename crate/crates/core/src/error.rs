use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no unit part of zero")]
    ZeroUnitPart,
    #[error("not integral at {0}")]
    NotIntegral(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("elimination requires lex with dropped variables first")]
    EliminationOrder,
    #[error("cannot saturate by the zero polynomial")]
    ZeroSaturation,
    #[error("Hilbert requires homogeneous ideal")]
    Inhomogeneous,
    #[error("Hilbert function did not stabilise within horizon {horizon}; retry with a horizon of at least {suggested}")]
    HorizonTooSmall { horizon: usize, suggested: usize },
    #[error("unsupported prime {0}")]
    UnsupportedPrime(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("wild types out of scope")]
    WildType,
    #[error("catalogue error: {0}")]
    Catalogue(String),
}
