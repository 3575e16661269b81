use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by [`ErrorClass`] so front ends can map them onto
/// exit codes without matching each one.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("edges overlap along a sub-curve of positive length")]
    OverlapUnsupported,
    #[error("x = {x} lies outside the edge span [{xmin}, {xmax}]")]
    OutOfSpan { x: f64, xmin: f64, xmax: f64 },
    #[error("split point ({x}, {y}) does not lie on the edge")]
    PointNotOnEdge { x: f64, y: f64 },
    #[error("split points are not strictly increasing along the edge interior")]
    UnsortedSplitPoints,
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("polygon is not counter-clockwise (signed area {0})")]
    NotCcw(f64),
    #[error("bad appendix point at list position {0}")]
    BadAppendix(usize),
    #[error("polygon needs at least two vertices and two edges enclosing an area")]
    TooFewVertices,
    #[error("polygon bounding boxes are disjoint")]
    DisjointInputs,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("decomposed-arc run is inconsistent: {0}")]
    InconsistentRun(String),
    #[error("odd number of crossings ({0})")]
    OddCrossingCount(usize),
    #[error("traversal stuck: {0}")]
    TraversalStuck(String),
    #[error("union has a hole, which a single circuit cannot represent")]
    UnionHoleUnsupported,
    #[error("difference has a hole, which a single circuit cannot represent")]
    DifferenceHoleUnsupported,
    #[error("random polygon generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("methods disagree on seed {seed}: {detail}")]
    MismatchedResults { seed: u64, detail: String },
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input geometry or arguments.
    Validation,
    /// Valid input outside the supported configuration space.
    Unsupported,
    /// An internal invariant broke.
    Internal,
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "NonFinite",
            Error::InvalidEdge(_) => "InvalidEdge",
            Error::OverlapUnsupported => "OverlapUnsupported",
            Error::OutOfSpan { .. } => "OutOfSpan",
            Error::PointNotOnEdge { .. } => "PointNotOnEdge",
            Error::UnsortedSplitPoints => "UnsortedSplitPoints",
            Error::NotSimple(..) => "NotSimple",
            Error::NotCcw(_) => "NotCCW",
            Error::BadAppendix(_) => "BadAppendix",
            Error::TooFewVertices => "TooFewVertices",
            Error::DisjointInputs => "DisjointInputs",
            Error::DegenerateConfiguration(_) => "DegenerateConfiguration",
            Error::InconsistentRun(_) => "InconsistentRun",
            Error::OddCrossingCount(_) => "OddCrossingCount",
            Error::TraversalStuck(_) => "TraversalStuck",
            Error::UnionHoleUnsupported => "UnionHoleUnsupported",
            Error::DifferenceHoleUnsupported => "DifferenceHoleUnsupported",
            Error::GenerationFailed(_) => "GenerationFailed",
            Error::MismatchedResults { .. } => "MismatchedResults",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NonFinite { .. }
            | Error::InvalidEdge(_)
            | Error::OutOfSpan { .. }
            | Error::PointNotOnEdge { .. }
            | Error::UnsortedSplitPoints
            | Error::NotSimple(..)
            | Error::NotCcw(_)
            | Error::BadAppendix(_)
            | Error::TooFewVertices
            | Error::GenerationFailed(_) => ErrorClass::Validation,
            Error::OverlapUnsupported
            | Error::DisjointInputs
            | Error::DegenerateConfiguration(_)
            | Error::UnionHoleUnsupported
            | Error::DifferenceHoleUnsupported
            | Error::OddCrossingCount(_) => ErrorClass::Unsupported,
            Error::InconsistentRun(_) | Error::TraversalStuck(_) | Error::MismatchedResults { .. } => ErrorClass::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
