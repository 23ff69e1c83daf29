use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{a} is divisible by {p}")]
    DivisibleByPrime { a: i64, p: u64 },
    #[error("{root} is not a root of the polynomial mod {p}")]
    NotARoot { root: u64, p: u64 },
    #[error("derivative vanishes mod {p} at {root}; lift not guaranteed")]
    DerivativeVanishes { root: u64, p: u64 },
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("unsupported modulus {modulus}: prime power exceeds the exhaustive bound {bound}")]
    UnsupportedModulus { modulus: u64, bound: u64 },
    #[error("search budget of {0} steps exceeded")]
    BudgetExceeded(u64),
    #[error("reflection undefined at vertex {0}")]
    ReflectionUndefined(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
