use thiserror::Error;

/// Errors raised by the library. Absent results (no angle structure, no
/// surface for a vector) are modelled with `Option`, not as errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("dangling face: tet {tet} face {face} has no gluing")]
    DanglingFace { tet: usize, face: u8 },
    #[error("face glued twice: tet {tet} face {face}")]
    FaceGluedTwice { tet: usize, face: u8 },
    #[error("permutation is not a bijection at tet {tet} face {face}")]
    BadPermutation { tet: usize, face: u8 },
    #[error("inconsistent gluing at tet {tet} face {face}: {reason}")]
    InconsistentGluing {
        tet: usize,
        face: u8,
        reason: String,
    },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("boundary is not a single torus: {0}")]
    BoundaryNotTorus(String),
    #[error("invalid curve word: {0}")]
    InvalidCurve(String),
    #[error("edge not contractible: {0}")]
    NotContractible(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis is truncated; completeness cannot be certified")]
    TruncatedBasis,
    #[error("missing meridian marking")]
    MissingMeridian,
    #[error("invalid standard position: {0}")]
    StandardPosition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numeric overflow: {0}")]
    Overflow(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
