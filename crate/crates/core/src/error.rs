use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} factors, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("classes belong to different ambients")]
    AmbientMismatch,

    #[error("class is not a unit (constant term {0})")]
    NonUnit(String),

    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),

    #[error("invalid cover data: {0}")]
    InvalidCover(String),

    #[error("invalid partition type: {0}")]
    InvalidPartition(String),

    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: &'static str,
    },

    #[error("unsupported input: {0}")]
    Domain(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("projection {0} is not valid for this partition type")]
    InvalidProjection(usize),

    #[error("degeneration cannot be applied: {0}")]
    Descriptor(String),

    #[error("cannot parse {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn range(what: &'static str, value: usize, range: &'static str) -> Self {
        Error::OutOfRange { what, value, range }
    }
}
