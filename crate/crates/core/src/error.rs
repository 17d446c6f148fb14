use thiserror::Error;

use crate::topology::ChimeraCoord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shape {m}x{n}x{l}: every dimension must be at least 1")]
    InvalidShape { m: u32, n: u32, l: u32 },

    #[error("coordinate {0} is outside the grid")]
    CoordOutOfRange(ChimeraCoord),

    #[error("{0} and {1} are not coupled in the ideal Chimera graph")]
    NotAnEdge(ChimeraCoord, ChimeraCoord),

    #[error("cell line out of bounds: {0}")]
    LineOutOfBounds(String),

    #[error("ell block out of bounds: {0}")]
    BlockOutOfBounds(String),

    #[error("malformed ell block: {0}")]
    MalformedBlock(String),

    #[error("no working rectangle: {0}")]
    NoWorkingRect(String),

    #[error("chain size n={n} out of range 2..={max}")]
    ChainSizeOutOfRange { n: u32, max: u32 },

    #[error("shape must be square, got {m}x{n}")]
    NonSquare { m: u32, n: u32 },

    #[error("malformed direction word: {0}")]
    MalformedWord(String),

    #[error("offset ({dx},{dy}) does not fit an n={n} construction in a {m}x{rows} grid")]
    OffsetOverflow { dx: u32, dy: u32, n: u32, m: u32, rows: u32 },

    #[error("not a block clique embedding: {0}")]
    NotBlockClique(String),

    #[error("search space of {size} exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("graph has {0} failed intra-cell couplers; use the intra-failure extension")]
    NonInduced(usize),

    #[error("malformed embedding: {0}")]
    MalformedEmbedding(String),

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("empty aggregation cell")]
    EmptyCell,

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl Error {
    /// Stable machine-readable name, used by the CLI and the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidShape { .. } => "invalid_shape",
            Error::CoordOutOfRange(_) => "coord_out_of_range",
            Error::NotAnEdge(..) => "not_an_edge",
            Error::LineOutOfBounds(_) => "line_out_of_bounds",
            Error::BlockOutOfBounds(_) => "block_out_of_bounds",
            Error::MalformedBlock(_) => "malformed_block",
            Error::NoWorkingRect(_) => "no_working_rect",
            Error::ChainSizeOutOfRange { .. } => "n_out_of_range",
            Error::NonSquare { .. } => "non_square",
            Error::MalformedWord(_) => "malformed_word",
            Error::OffsetOverflow { .. } => "offset_overflow",
            Error::NotBlockClique(_) => "not_block_clique",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::NonInduced(_) => "non_induced",
            Error::MalformedEmbedding(_) => "malformed_embedding",
            Error::InvalidConfig(_) => "invalid_config",
            Error::EmptyCell => "empty_cell",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
