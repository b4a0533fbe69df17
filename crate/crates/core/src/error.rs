use thiserror::Error;

use crate::weyl::RootSystemId;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidSystem(String),

    #[error("could not parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid Weyl group element `{token}` for {system}: {reason}")]
    InvalidElement {
        system: RootSystemId,
        token: String,
        reason: String,
    },

    #[error("invalid subset label `{token}` for {system}: {reason}")]
    InvalidLabel {
        system: RootSystemId,
        token: String,
        reason: String,
    },

    #[error("operands belong to different root systems ({0} and {1})")]
    MixedSystems(RootSystemId, RootSystemId),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{system} has {size} Weyl group elements, above the size cap of {cap}")]
    SizeCap {
        system: RootSystemId,
        size: u128,
        cap: usize,
    },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("oracle evaluation failed: {0}")]
    Oracle(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
