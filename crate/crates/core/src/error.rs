use thiserror::Error;

use crate::state::BasisLabel;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not in the semigroup")]
    NotMember(i64),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("label {label} is not a basis label of this representation")]
    InvalidLabel { label: BasisLabel },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("representation is not inverse up to the checked scope: {0}")]
    NotInverse(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
