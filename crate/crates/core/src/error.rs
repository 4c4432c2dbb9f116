use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    /// A level edge under the chosen direction; endpoints are vertex indices.
    #[error("direction is not generic: edge ({0}, {1}) has equal values at both endpoints")]
    Genericity(usize, usize),
    #[error("degenerate configuration: {0}")]
    Degeneracy(String),
    /// A floating-point decision fell inside the tolerance band.
    #[error("indeterminate on floating backend: {0}")]
    Indeterminate(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Error {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
