use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed XML in an SVG document.
    #[error("xml error at line {line}, column {col}: {msg}")]
    Xml { line: u32, col: u32, msg: String },

    /// A primitive violates its construction invariants.
    #[error("invalid primitive: {0}")]
    InvalidPrimitive(String),

    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix shape disagreement in the numeric core.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A NaN or infinity was produced where finite values are required.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// Bad input data: annotations, manifests, checkpoints.
    #[error("data error: {0}")]
    Data(String),

    /// Invalid run configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad input files or arguments rather than by
    /// the runtime itself. The CLI maps these to a distinct exit code.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Xml { .. }
                | Error::InvalidPrimitive(_)
                | Error::Data(_)
                | Error::Config(_)
                | Error::Json(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
