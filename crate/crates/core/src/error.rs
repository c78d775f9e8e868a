use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("odd ambient dimension {0}")]
    OddAmbient(usize),
    #[error("subspace is not contained in the outer space")]
    NotContained,
    #[error("chart mismatch")]
    ChartMismatch,
    #[error("not isotropic: {0}")]
    NotIsotropic(String),
    #[error("bilinear map is not skew-symmetric on the characteristic space")]
    NotSkew,
    #[error("frame rank drops at point {point:?}: expected {expected}, found {found}")]
    DegeneratePoint { point: Vec<String>, expected: usize, found: usize },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("section is not in the span of the frame: {0}")]
    NotInSpan(String),
    #[error("rank precondition violated: {0}")]
    RankPrecondition(String),
    #[error("singular step matrix in normalization: {0}")]
    SingularStep(String),
    #[error("chart is not adapted: {0}")]
    NotAdapted(String),
    #[error("dimension is not constant on the sample grid: {0}")]
    NotProper(String),
    #[error("reducibility condition fails: {0}")]
    NotReducible(String),
    #[error("no verified projectable frame: {0}")]
    NotProjectable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
