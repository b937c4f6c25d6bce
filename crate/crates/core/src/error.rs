use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("inconsistent diagram: {0}")]
    Topology(String),

    #[error("unknown component {0}")]
    UnknownComponent(usize),

    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),

    #[error("unknown edge {0}")]
    UnknownEdge(usize),

    #[error("invalid band: {0}")]
    Band(String),

    #[error("invalid move: {0}")]
    Move(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("branch budget of {budget} nodes exceeded after exploring {explored} nodes")]
    Budget { budget: u64, explored: u64 },

    #[error("series error: {0}")]
    Series(String),
}

pub type Result<T> = std::result::Result<T, Error>;
