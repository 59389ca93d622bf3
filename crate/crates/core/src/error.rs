use thiserror::Error;

use crate::ring::RingDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different coefficient rings.
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch {
        left: RingDescriptor,
        right: RingDescriptor,
    },

    /// Series truncated at different orders.
    #[error("truncation order mismatch: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },

    /// An argument lies outside the domain of a map (exp on a unit, a q-operator on a constant...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A solver or check was asked for a setting it does not cover.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
