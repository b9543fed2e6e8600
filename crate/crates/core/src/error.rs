use thiserror::Error;

use crate::boolfun::ParsePolyError;
use crate::intlinalg::LinalgError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    Poly(#[from] ParsePolyError),

    #[error("invalid solution code {0:?}: expected a decimal integer or 0x followed by six hex digits, below 2^24")]
    Code(String),

    #[error("invalid leg triple ({0}, {1}, {2}): need 1 <= i < j < k <= 6")]
    Legs(usize, usize, usize),

    #[error("R-map {0:#08x} does not satisfy the tetrahedron equation")]
    NotASolution(u32),

    #[error("cochain {w:?} is not a 3-cocycle of R-map {code:#08x}")]
    NotACocycle { code: u32, w: [i64; 8] },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("consistency violation: {0}")]
    Consistency(String),

    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("reference file, line {line}: {msg}")]
    ReferenceParse { line: usize, msg: String },

    #[error("reference entry R_{id}: {msg}")]
    ReferenceInvariant { id: u32, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
