use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A computation was asked for beyond the bound its algorithm supports.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("rational function has a pole at 0")]
    PoleAtZero,

    #[error("not enough terms to fit: have {have}, need at least {need}")]
    InsufficientData { have: usize, need: usize },

    #[error("denominator has a factor outside the (1 - j u) family")]
    NonLinearFactor,

    #[error("pole at 1/{d} has order {order}; the limit does not exist")]
    LimitDoesNotExist { d: u64, order: usize },

    #[error("graph is disconnected; factor it over its components first")]
    Disconnected,

    #[error("block {0:?} does not induce a connected subgraph, so it is not a flat")]
    NotAFlat(Vec<usize>),

    #[error("cache I/O: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
