//! Error type shared by every module in the crate.
//!
//! All operations with preconditions return `Result<_, Error>`; panics are
//! reserved for internal invariant violations (indexing bugs), never for
//! rejected user input.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument {argument} = {value} exceeds the sieve limit {limit}")]
    SieveLimitExceeded {
        argument: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("eigenform table covers n <= {available} but n <= {needed} is required")]
    TableTooSmall { needed: u64, available: u64 },

    #[error("tau({n}) may exceed signed 128-bit range (|tau(n)| < 2 n^6 fails to fit)")]
    TauOverflow { n: u64 },

    #[error("modulus q = {q} is not supported here (need {requirement})")]
    InvalidModulus { q: u64, requirement: &'static str },

    #[error("{n} is not prime")]
    NotPrime { n: u64 },

    #[error("character is not primitive (conductor {conductor} < modulus {modulus})")]
    ImprimitiveCharacter { conductor: u64, modulus: u64 },

    #[error("principal character rejected: {context}")]
    PrincipalCharacter { context: &'static str },

    #[error("evaluation point s = 1 is a pole of zeta")]
    ZetaPole,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache file rejected: {0}")]
    CacheInvalid(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
