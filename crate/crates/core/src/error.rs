use thiserror::Error;

/// Errors produced by the library.
///
/// Every variant has a stable machine-readable code (see [`Error::code`]) that
/// the command-line front end reports in JSON mode.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("infinity has no Laurent expansion")]
    InfinityNotExpandable,

    #[error("infinity has no polynomial part, leading term or finite degree")]
    InfinityNotDecomposable,

    #[error("0/0 is not a point of the projective line")]
    IndeterminatePoint,

    #[error("points {0} and {1} of the triple coincide")]
    DistinctnessViolated(usize, usize),

    #[error("malformed continued fraction: {0}")]
    MalformedCF(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("reduction exceeded its iteration cap of {cap} moves")]
    ReductionDiverged { cap: usize },

    #[error("triple is not in the fundamental domain")]
    NotInDomain,

    #[error("step count must be at least 1")]
    InvalidStepCount,

    #[error("anchor vertex does not lie on the geodesic")]
    AnchorOffGeodesic,

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    #[error("ball too large: {0}")]
    BallTooLarge(String),

    #[error("vertex is outside the materialized ball")]
    OutOfBall,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::FieldMismatch => "FIELD_MISMATCH",
            Error::InvalidField(_) => "INVALID_FIELD",
            Error::InfinityNotExpandable => "INFINITY_NOT_EXPANDABLE",
            Error::InfinityNotDecomposable => "INFINITY_NOT_DECOMPOSABLE",
            Error::IndeterminatePoint => "INDETERMINATE_POINT",
            Error::DistinctnessViolated(..) => "DISTINCTNESS_VIOLATED",
            Error::MalformedCF(_) => "MALFORMED_CF",
            Error::InvalidGenerator(_) => "INVALID_GENERATOR",
            Error::SingularMatrix => "SINGULAR_MATRIX",
            Error::ReductionDiverged { .. } => "REDUCTION_DIVERGED",
            Error::NotInDomain => "NOT_IN_DOMAIN",
            Error::InvalidStepCount => "INVALID_STEP_COUNT",
            Error::AnchorOffGeodesic => "ANCHOR_OFF_GEODESIC",
            Error::InvalidVertex(_) => "INVALID_VERTEX",
            Error::BallTooLarge(_) => "BALL_TOO_LARGE",
            Error::OutOfBall => "OUT_OF_BALL",
            Error::Parse { .. } => "PARSE_ERROR",
        }
    }

    /// True for input-syntax and configuration errors, as opposed to
    /// mathematical (domain) errors.
    pub fn is_parse_or_config(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvalidField(_))
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
