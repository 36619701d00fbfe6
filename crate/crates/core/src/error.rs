use thiserror::Error;

use crate::cartan::Kind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {kind}")]
    InvalidRank { kind: Kind, rank: usize },

    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("({0},{1}) not in X")]
    NotInX(usize, i64),

    #[error("({0},{1}) not in W")]
    NotInW(usize, i64),

    #[error("({0},{1}) is not a skew-diagram point (X')")]
    NotInXPrime(usize, i64),

    #[error("monomial {0} is not dominant")]
    NotDominant(String),

    #[error("{0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}
