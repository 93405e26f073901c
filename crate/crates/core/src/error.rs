use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Occupation list, probe or scheme does not fit the interaction.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    /// A hard resource cap was hit before the requested accuracy was reached.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("Cramér–Rao bound undefined for Fisher information {0}")]
    UndefinedBound(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
