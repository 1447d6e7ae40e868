use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the machine-readable error kinds surfaced by the
/// command-line tool, see [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quiver has no arrows")]
    EmptyQuiver,
    #[error("vertex labels must be exactly 0..{expected}; label {missing} is unused")]
    VertexGap { expected: usize, missing: usize },
    #[error("expected a vector of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("arrow {arrow} is a self-loop at vertex {vertex}")]
    SelfLoop { arrow: usize, vertex: usize },
    #[error("argument `{name}` must be positive, got {value}")]
    NonPositiveArgument { name: &'static str, value: i64 },
    #[error("{what} index {index} out of range (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("weight entries sum to {sum}, expected 0")]
    WeightNotBalanced { sum: i64 },
    #[error("no flow supported on the given arrows realises the weight")]
    Infeasible,
    #[error("underlying graph is not connected")]
    Disconnected,
    #[error("weight does not lie in the cone of weights; the flow polytope is empty")]
    WeightNotInCone,
    #[error("tightening did not converge within {0} contractions")]
    NonConvergence(usize),
    #[error("ambient dimension must be positive")]
    ZeroAmbientDim,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("enumeration would visit {candidates} candidates, above the cap {cap}")]
    TooLarge { candidates: u128, cap: u128 },
    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,
    #[error("polytope has dimension {dim} in ambient dimension {ambient}")]
    NotFullDimensional { dim: isize, ambient: usize },
    #[error("{count} vertices exceed the enumeration cap {cap}")]
    TooManyVertices { count: usize, cap: usize },
    #[error("{count} arrows exceed the subset enumeration cap {cap}")]
    TooManyArrows { count: usize, cap: usize },
    #[error("arrow set {0:?} is not a spanning tree")]
    NotSpanningTree(Vec<usize>),
    #[error("{count} spanning trees exceed the cap {cap}")]
    TooManyTrees { count: usize, cap: usize },
    #[error("cannot be determined. stableTrees are empty")]
    Indeterminate,
    #[error("flow polytope has {0} interior lattice points, expected exactly one")]
    NoUniqueInteriorPoint(usize),
    #[error("object has {0} projected dimensions; plots support at most 3")]
    DimensionTooHigh(usize),
    #[error("invalid input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyQuiver => "EmptyQuiver",
            Error::VertexGap { .. } => "VertexGap",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::SelfLoop { .. } => "SelfLoop",
            Error::NonPositiveArgument { .. } => "NonPositiveArgument",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::WeightNotBalanced { .. } => "WeightNotBalanced",
            Error::Infeasible => "Infeasible",
            Error::Disconnected => "Disconnected",
            Error::WeightNotInCone => "WeightNotInCone",
            Error::NonConvergence(_) => "NonConvergence",
            Error::ZeroAmbientDim => "ZeroAmbientDim",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::OriginNotInterior => "OriginNotInterior",
            Error::NotFullDimensional { .. } => "NotFullDimensional",
            Error::TooManyVertices { .. } => "TooManyVertices",
            Error::TooManyArrows { .. } => "TooManyArrows",
            Error::NotSpanningTree(_) => "NotSpanningTree",
            Error::TooManyTrees { .. } => "TooManyTrees",
            Error::Indeterminate => "Indeterminate",
            Error::NoUniqueInteriorPoint(_) => "NoUniqueInteriorPoint",
            Error::DimensionTooHigh(_) => "DimensionTooHigh",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
