use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("enumeration bound exceeded: n = {n} > {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("series order {have} is insufficient, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("singularity search failed: {0}")]
    Singularity(String),

    #[error("square-root singular schema does not apply: {0}")]
    Schema(String),

    #[error("trivial block has no shadow type")]
    TrivialBlock,

    #[error("unknown block type `{0}`")]
    UnknownType(String),
}

pub type Result<T> = std::result::Result<T, Error>;
