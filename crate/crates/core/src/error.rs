use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid embedding: {0}")]
    Embedding(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("oracle too large: graph has {n} vertices, limit is {limit}")]
    OracleTooLarge { n: usize, limit: usize },

    /// The determinant of a supposedly pfaffian orientation was not a perfect
    /// square. Only an orientation bug can produce this.
    #[error("determinant {0} is not a perfect square")]
    NotPerfectSquare(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
