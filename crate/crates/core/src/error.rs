use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set width {found} does not match complex with {expected} vertices")]
    WidthMismatch { expected: usize, found: usize },
    #[error("vertices {0:?} do not span a simplex")]
    NotASimplex(Vec<usize>),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("degree {degree} out of range (maximum {max})")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what}: {count} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        count: u128,
        cap: u128,
    },
    #[error("unknown chamber index {0}")]
    UnknownChamber(usize),
    #[error("projection minimizer is not unique ({count} chambers at distance {distance})")]
    NonUniqueMinimizer { count: usize, distance: usize },
    #[error("lines do not form a frame of the ambient space")]
    NotAFrame,
    #[error("panel {0} listed more than once")]
    DuplicatePanel(usize),
    #[error("not magic: axis {axis} index {index} has slice sum {observed}, expected {expected}")]
    NotMagic {
        axis: usize,
        index: usize,
        observed: u64,
        expected: u64,
    },
    #[error("magic cube has zero weight")]
    ZeroWeightCube,
    #[error("search found only {achieved} of the requested items")]
    NotFound { achieved: usize },
    #[error("coloring is improper: adjacent vertices {0} and {1} share a color")]
    ImproperColoring(usize, usize),
    #[error("connectivity mode supports only m <= 1, got m = {0}")]
    UnsupportedDegree(usize),
    #[error("budget exceeded: {needed} vertices, cap {cap}")]
    BudgetExceeded { needed: usize, cap: usize },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("inconsistent height at element {element} along generator {generator}")]
    InconsistentHeight { element: String, generator: usize },
    #[error("element {0} lies on the ball boundary")]
    BoundaryElement(String),
    #[error("invalid move system: {0}")]
    InvalidMoveSystem(String),
    #[error("certificate rejected: {0}")]
    Certificate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
