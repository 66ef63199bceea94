use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("all 256 byte values occur in the input; no end marker is available")]
    AlphabetFull,

    #[error("end marker byte {0:#04x} occurs in the input")]
    EndMarkerPresent(u8),

    #[error("text is empty")]
    EmptyText,

    #[error("ordering does not match the text alphabet: {0}")]
    OrderingMismatch(String),

    #[error("input of length {len} exceeds the naive transform cap of {cap}")]
    TooLong { len: usize, cap: usize },

    #[error("malformed BWT: {0}")]
    MalformedBwt(String),

    #[error("malformed RLE: {0}")]
    MalformedRle(String),

    #[error("uncompressed size is zero")]
    DivisionByZero,

    #[error("move {0} is out of range for an alphabet of size {1}")]
    IndexOutOfRange(String, usize),

    #[error("alphabet size {sigma} exceeds the exhaustive search cap of {cap}")]
    AlphabetTooLarge { sigma: usize, cap: usize },

    #[error("cannot summarize an empty group")]
    EmptyGroup,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
