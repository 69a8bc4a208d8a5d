use thiserror::Error;

/// Errors raised by the arithmetic, solver and parsing layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: values over primes {0} and {1} cannot be combined")]
    DomainMismatch(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot lower level {current} to {target}")]
    LevelBelowCurrent { current: u32, target: u32 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
