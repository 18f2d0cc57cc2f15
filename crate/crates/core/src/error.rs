use thiserror::Error;

use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system {label}{rank}: expected A_n (n >= 1), D_n (n >= 4), E6, E7 or E8")]
    InvalidRootSystem { label: String, rank: usize },

    #[error("node {node} out of range for rank {rank} (nodes are numbered 1..={rank})")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("weight {weight} has {found} coefficients, root system has rank {expected}")]
    RankMismatch {
        weight: Weight,
        expected: usize,
        found: usize,
    },

    #[error("weight {weight} is not dominant")]
    NotDominant { weight: Weight },

    #[error("weight {weight} is not Levi-dominant: coefficient at node {node} is negative")]
    NotLeviDominant { weight: Weight, node: usize },

    #[error("unsupported parabolic: {0}")]
    UnsupportedParabolic(String),

    #[error("unsupported power {0} (symmetric powers 2 and 3, exterior power 2)")]
    UnsupportedPower(u32),

    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    /// Reached only through a broken Cartan matrix or an arithmetic bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
