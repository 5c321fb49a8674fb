use thiserror::Error;

/// Errors raised by the exact and numeric analyses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight sums must agree: sum({left_name}) = {left} but sum({right_name}) = {right}")]
    SumMismatch {
        left_name: &'static str,
        right_name: &'static str,
        left: i64,
        right: i64,
    },
    #[error("action is not an orbifold action: {0}")]
    NotOrbifold(String),
    #[error("stabilizer of {0} is infinite")]
    InfiniteStabilizer(String),
    #[error("the ineffective kernel of the action is infinite")]
    InfiniteKernel,
    #[error("scale factor {0} does not keep the weights integral")]
    NonIntegralScale(String),
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("matrix {0:?} is not unimodular")]
    NotUnimodular([[i64; 2]; 2]),
    #[error("arithmetic overflow while transforming weights")]
    Overflow,
    #[error("pairwise weight sum {0} is zero")]
    ZeroWeight(&'static str),
    #[error("gcd(p, q, r) = {0}, expected 1")]
    NotPrimitive(i64),
    #[error("expected p >= q >= 0, got p = {p}, q = {q}")]
    InvalidNormalization { p: i64, q: i64 },
    #[error("gcd(p, q) = {0}, expected 1")]
    NotCoprime(i64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("no positively curved circle with |lambda|, |mu| <= {0}")]
    ExhaustedBound(u32),
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
