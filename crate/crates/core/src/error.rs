use std::path::PathBuf;

use thiserror::Error;

use crate::annotate::BoundingBox;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("image must be at least 1x1, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },

    #[error("{width}x{height} image needs {expected} values, buffer holds {actual}")]
    BufferLength {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },

    #[error("size mismatch: {}x{} vs {}x{}", .left.0, .left.1, .right.0, .right.1)]
    SizeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("mask value {value} at index {index} is not 0 or 1")]
    NonBinaryMask { index: usize, value: u8 },

    #[error("background initialisation needs at least one frame")]
    EmptySequence,

    #[error("update_alpha must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("a {rows}x{cols} grid does not fit a {width}x{height} mask")]
    InvalidGrid {
        rows: usize,
        cols: usize,
        width: usize,
        height: usize,
    },

    #[error("bounding box {bbox:?} lies outside a {width}x{height} image")]
    BoxOutOfBounds {
        bbox: BoundingBox,
        width: usize,
        height: usize,
    },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("sequence length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", .path.display())]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
