use thiserror::Error;

/// Every failure the library can report. Each variant carries a stable
/// machine-readable code (see [`Error::code`]) used by the CLI's error JSON.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("maximal cones overlap in their interiors: {0}")]
    RejectNonSimplicial(String),
    #[error("elimination budget exceeded ({rows} rows > {budget})")]
    SizeLimit { rows: usize, budget: usize },
    #[error("cone {0:?} is not a cone of the fan")]
    ConeNotInFan(Vec<usize>),
    #[error("cone of dimension {0} cannot be subdivided (need at least 2)")]
    DimTooSmall(usize),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is degenerate: {0}")]
    Degenerate(String),
    #[error("polytope is not simple at vertex {0}")]
    NotSimple(usize),
    #[error("probe vector is perpendicular to an edge at vertex {0}")]
    NuDegenerate(usize),
    #[error("monomial evaluated to a non-integer ({0}); the fan is not complete and regular")]
    NonIntegerResult(String),
    #[error("ring-reduction oracle exceeded its budget of {0} steps")]
    OracleBudgetExceeded(usize),
    #[error("h-vector reconstructed from g is not symmetric")]
    SymmetryViolation,
    #[error("parameters must be weakly increasing and nonnegative: {0:?}")]
    ParamOrder(Vec<i64>),
    #[error("construction failed its validation oracle: {0}")]
    ValidationFailed(String),
    #[error("calibration failed: {0}")]
    CalibrationFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable upper-case error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidFan(_) => "INVALID_FAN",
            Error::InvalidPolytope(_) => "INVALID_POLYTOPE",
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::RejectNonSimplicial(_) => "REJECT_NON_SIMPLICIAL",
            Error::SizeLimit { .. } => "SIZE_LIMIT",
            Error::ConeNotInFan(_) => "CONE_NOT_IN_FAN",
            Error::DimTooSmall(_) => "DIM_TOO_SMALL",
            Error::Unbounded => "UNBOUNDED",
            Error::Degenerate(_) => "DEGENERATE",
            Error::NotSimple(_) => "NOT_SIMPLE",
            Error::NuDegenerate(_) => "NU_DEGENERATE",
            Error::NonIntegerResult(_) => "NON_INTEGER_RESULT",
            Error::OracleBudgetExceeded(_) => "ORACLE_BUDGET_EXCEEDED",
            Error::SymmetryViolation => "SYMMETRY_VIOLATION",
            Error::ParamOrder(_) => "PARAM_ORDER",
            Error::ValidationFailed(_) => "VALIDATION_FAILED",
            Error::CalibrationFailed(_) => "CALIBRATION_FAILED",
            Error::Precondition(_) => "PRECONDITION",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
