use thiserror::Error;

/// Coarse classification used by callers that map failures to process exit
/// codes: configuration and argument problems, malformed or inconsistent
/// input data, and internal invariant violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Config,
    Data,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid box [{x1}, {y1}, {x2}, {y2}]: {reason}")]
    InvalidBox {
        x1: f64,
        y1: f64,
        x2: f64,
        y2: f64,
        reason: &'static str,
    },

    #[error("empty layout: {0}")]
    EmptyLayout(&'static str),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("unknown {what} \"{got}\" (expected one of: {expected})")]
    UnknownVariant {
        what: &'static str,
        got: String,
        expected: &'static str,
    },

    #[error("negative loss component: {0}")]
    NegativeLossComponent(String),

    #[error("undefined AP: class has no ground truth")]
    UndefinedAp,

    #[error("unknown image ids in detections: {0:?}")]
    UnknownImageIds(Vec<u64>),

    #[error("malformed JSON at byte {offset} (line {line}, column {column}): {message}")]
    MalformedJson {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error in record {index}: {message}")]
    Schema { index: usize, message: String },

    #[error("dangling reference in annotation record {index}: {what} {id} is not defined")]
    DanglingRef {
        index: usize,
        what: &'static str,
        id: i64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            InvalidBox { .. } | EmptyLayout(_) | InvalidLayout(_) | InvalidConfig(_)
            | UnknownVariant { .. } | NegativeLossComponent(_) => ErrorCategory::Config,
            UndefinedAp | UnknownImageIds(_) | MalformedJson { .. } | Schema { .. }
            | DanglingRef { .. } | Io(_) => ErrorCategory::Data,
            Internal(_) => ErrorCategory::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
