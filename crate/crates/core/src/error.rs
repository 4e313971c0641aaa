use thiserror::Error;

/// Errors raised by the library. Variant names follow the failure they describe so that
/// callers (and the CLI) can match on them directly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("linear form {0} is not primitive")]
    NotPrimitive(String),
    #[error("degenerate input: affine hull has dimension {dimension}, expected 3")]
    DegenerateInput { dimension: usize },
    #[error("slice level {level} lies outside [{min}, {max}]")]
    EmptySlice {
        level: String,
        min: String,
        max: String,
    },
    #[error("polygon is not 2-dimensional ({vertices} vertices)")]
    LowDimensional { vertices: usize },
    #[error("ray direction is zero")]
    ZeroDirection,
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("vertex {0} is not simple")]
    NotSimpleVertex(String),
    #[error("point {point} does not lie in the dilate {n}P")]
    OutsideDilate { point: String, n: String },
    #[error("{0} is not unimodular")]
    NotUnimodular(String),
    #[error("no unit square in the facet extends triangle {0}")]
    SquareExtensionFailed(String),
    #[error("degenerate piece: {0}")]
    DegeneratePiece(String),
    #[error("pushed facet is not homothetic to the facet: {0}")]
    NotHomothetic(String),
    #[error("bad Cayley input: {0}")]
    BadCayleyInput(String),
    #[error("dilation ratio {0} is too small for a lozenge cover")]
    RatioTooSmall(String),
    #[error("point {0} lies outside the polygon")]
    OutsidePolygon(String),
    #[error("chisel depth {depth} too deep at vertex {vertex}")]
    ChiselTooDeep { vertex: String, depth: String },
    #[error("{0} is not a vertex")]
    NotAVertex(String),
    #[error("polytope is not smooth: {0}")]
    NotSmooth(String),
    #[error("polytope is not centrally symmetric about the origin")]
    NotCentrallySymmetric,
    #[error("centrally symmetric polytope has pushed-facet ratio {0} < 2")]
    SymmetricRatioTooSmall(String),
    #[error("no piece of the certificate contains {0}")]
    Uncovered(String),
    #[error("no decomposition of {0} exists")]
    NoDecomposition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
