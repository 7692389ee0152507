use thiserror::Error;

use crate::curve::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operands belong to different curves")]
    CurveMismatch,
    #[error("no primitive {n}-th root in field of order {order}")]
    NoRootOfUnity { n: u64, order: u64 },
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("index (mu={mu}, nu={nu}) is not admissible")]
    Inadmissible { mu: u32, nu: u32 },
    #[error("element has a pole outside the fibers over 0 and infinity ({0})")]
    PoleOutsideLocus(String),
    #[error("invalid curve: {}", .0.iter().map(|v| v.message.as_str()).collect::<Vec<_>>().join("; "))]
    InvalidCurve(Vec<Violation>),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
