use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is outside the supported range 2..=64")]
    ModulusOutOfRange(i64),
    #[error("{value} is not a unit modulo {n}")]
    NotAUnit { value: u32, n: u32 },
    #[error("points from different moduli ({0} and {1})")]
    MixedModuli(u32, u32),
    #[error("{m} does not divide {n}")]
    NotADivisor { m: u32, n: u32 },
    #[error("direction ({u},{v}) is not primitive modulo {n}")]
    NotPrimitive { u: u32, v: u32, n: u32 },
    #[error("modulus {0} is not squarefree; the determinant test is unsound there")]
    NotSquarefree(u32),
    #[error("point set is not an arc")]
    NotAnArc,
    #[error("arc is not complete")]
    NotComplete,
    #[error("matrix determinant {det} is not a unit modulo {n}")]
    NotInvertible { det: u32, n: u32 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("arc of size {size} is too small for normalization (needs more than {limit})")]
    TooSmall { size: usize, limit: usize },
    #[error("no class-(0,1) / class-(1,0) pair with unit cross determinant")]
    NoUnitPair,
    #[error("duplicate point ({0},{1})")]
    DuplicatePoint(u32, u32),
    #[error("cell ({0},{1}) is not free")]
    CellNotFree(u32, u32),
    #[error("invalid search mode: {0}")]
    InvalidMode(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
