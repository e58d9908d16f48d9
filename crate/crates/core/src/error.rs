use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate segment: both endpoints coincide")]
    DegenerateSegment,

    #[error("index range [{start}, {end}] out of bounds for {len} vertices")]
    IndexOutOfRange { start: usize, end: usize, len: usize },

    #[error("invalid polyline: {0}")]
    InvalidPolyline(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("no solution{}: {reason}", vertex.map(|v| format!(" at vertex {v}")).unwrap_or_default())]
    NoSolution { vertex: Option<usize>, reason: String },

    #[error("back-pointer chain broken at vertex {0}")]
    CorruptTable(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn no_solution(vertex: Option<usize>, reason: impl Into<String>) -> Self {
        Error::NoSolution {
            vertex,
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
