use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Where a holomorphy check failed: the complex coordinate probed and the
/// relative size of the anti-holomorphic Fourier mode on the sampling circle.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct HolomorphyWitness {
    pub sample: usize,
    pub input: (usize, usize),
    pub output: (usize, usize),
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra must have at least one component")]
    EmptyAlgebra,

    #[error("mismatched algebra: expected {expected} components, found {found}")]
    MismatchedAlgebra { expected: usize, found: usize },

    #[error("element is not invertible (zero at components {indices:?})")]
    NonInvertible { indices: Vec<usize> },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("rank mismatch in {context}: expected {expected}, found {found}")]
    RankMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("unsupported norm mode: {0}")]
    UnsupportedMode(String),

    #[error("bad wedge indices: {0}")]
    BadIndices(String),

    #[error("singular map at algebra components {components:?}")]
    SingularMap { components: Vec<usize> },

    #[error("point is too close to the domain boundary (distance {distance})")]
    BoundaryTooClose { distance: f64 },

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("quadrature did not converge after {nodes} nodes (difference {difference:e})")]
    ConvergenceFailure { nodes: usize, difference: f64 },

    #[error(
        "map is not holomorphic: sample {}, input {:?}, output {:?}, defect {:e}",
        .0.sample, .0.input, .0.output, .0.defect
    )]
    NonHolomorphic(HolomorphyWitness),

    #[error("structural error: {0}")]
    StructuralError(String),

    #[error("point is not in the overlap of {from} and {to}")]
    NotInOverlap { from: String, to: String },

    #[error("missing chart data: {0}")]
    MissingChartData(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("unsupported transition: {0}")]
    UnsupportedTransition(String),

    #[error("unsupported cover: {0}")]
    UnsupportedCover(String),

    #[error("truncation window too small: {0}")]
    WindowTooSmall(String),

    #[error("coboundary composition is nonzero: {0}")]
    CoboundaryNotNilpotent(String),

    #[error("rank is unstable at component {component}: singular value {singular_value:e} is near the threshold")]
    RankInstability { component: usize, singular_value: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
