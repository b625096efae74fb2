use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("axis index {axis} out of range for a space with {n} axes")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("the point set is empty")]
    EmptySet,

    #[error("coordinate (axis {axis}, value {value}) is not covered")]
    MissingCoordinate { axis: usize, value: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("the set is not good")]
    NotGood,

    #[error("the set is already full")]
    AlreadyFull,

    #[error("the given points are linearly independent; no circuit exists")]
    Independent,

    #[error("pin on coordinate (axis {axis}, value {value}) which is not a column of the system")]
    PinOutsideSystem { axis: usize, value: usize },

    #[error("point {0} is not in the set")]
    NotInSet(String),

    #[error("points are not related: {0}")]
    NotRelated(String),

    #[error("the set has {0} related components; a single component is required")]
    MultipleComponents(usize),

    #[error("related components {0} and {1} share a coordinate")]
    SharedCoordinate(usize, usize),

    #[error("boundary has no coordinate on axis {0}")]
    BoundaryMissesAxis(usize),

    #[error("pins do not coincide with the boundary of the set")]
    NotABoundary,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
