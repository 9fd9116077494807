use thiserror::Error;

/// Errors reported by the geometry pipeline.
///
/// Variants fall in two groups: usage errors (bad shapes, violated
/// preconditions) and hypothesis failures, where the input is well formed
/// but the family does not satisfy what an operation needs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid scalar {input:?}: {reason}")]
    ParseScalar { input: String, reason: String },

    #[error("points do not affinely span R^{dim} (affine dimension {found})")]
    NotFullDimensional { dim: usize, found: usize },

    #[error("origin is not strictly interior to the polytope")]
    OriginNotInterior,

    #[error("index {0} is not a vertex of the polytope")]
    NotAVertex(usize),

    #[error("witness vector is not strictly positive on vector {index}")]
    WitnessInvalid { index: usize },

    #[error("point lies inside the polytope")]
    PointInsidePolytope,

    #[error("family is not strongly separated: {left:?} vs {right:?} admits no strict separator")]
    NotStronglySeparated { left: Vec<usize>, right: Vec<usize> },

    #[error("expected exactly two rainbow facets, found {found}")]
    RainbowCountUnexpected { found: usize },

    #[error("no candidate tangent keeps member {member} strictly on the positive side")]
    NeitherQualifies { member: usize },

    #[error("both candidate tangents keep member {member} strictly on the positive side")]
    BothQualify { member: usize },

    #[error("too many vertices for the brute-force oracle: {count} > {guard}")]
    TooLarge { count: usize, guard: usize },

    #[error("visibility hypothesis fails for color subset {subset:?}")]
    HypothesisFails { subset: Vec<usize> },

    #[error("members {first} and {second} share the vertex {point}")]
    VertexColorClash {
        first: usize,
        second: usize,
        point: String,
    },

    #[error("unsupported body: {0}")]
    UnsupportedBody(String),

    #[error("circles are not disjoint")]
    CirclesNotDisjoint,

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
