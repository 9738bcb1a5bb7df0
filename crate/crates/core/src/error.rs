use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the pipeline. The variant name is part of the
/// public contract: reports carry it verbatim (see [`Error::name`]).
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown variable '{name}' at offset {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("interval does not isolate a single root")]
    NotIsolating,
    #[error("gap radius search exceeded {0} halvings")]
    HalvingExhausted(usize),
    #[error("ideal is not zero-dimensional: {0}")]
    NotZeroDimensional(String),
    #[error("ideal is not one-dimensional (dimension {0})")]
    NotOneDimensional(String),
    #[error("no separating linear form among {0} candidates")]
    SeparatingFormBudget(usize),
    #[error("inequality {index} evaluates to {value} at the point, which is not the square of a rational")]
    NonRationalSlack { index: usize, value: String },
    #[error("{equalities} equality constraints in {variables} variables; at most n-1 are allowed")]
    TooManyConstraints { equalities: usize, variables: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("no invertible coordinate change found after {0} samples")]
    CoordinateChangeExhausted(usize),
    #[error("step 1 found no one-dimensional tangency ideal after {0} coordinate changes")]
    RetriesExhausted(usize),
    #[error("critical-distance system vanishes on a curve through the point ({0}); try a coordinate change or supply radical generators")]
    RadiusDegenerate(String),
    #[error("radius {0} is not certified: the gap check fails at that radius")]
    RadiusNotCertified(String),
    #[error("tangency curve misses the sphere of the chosen radius")]
    EmptySphereSection,
    #[error("theoretical assumption violated: {0}")]
    AssumptionViolation(String),
    #[error("LICQ fails at the point")]
    LicqViolated,
    #[error("point is not feasible: {0}")]
    PointNotFeasible(String),
    #[error("point is not a KKT point (it is not on the critical variety)")]
    PointNotKkt,
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable variant name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "Parse",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::InvalidInput(_) => "InvalidInput",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::RingMismatch => "RingMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::EndpointIsRoot(_) => "EndpointIsRoot",
            Error::NotIsolating => "NotIsolating",
            Error::HalvingExhausted(_) => "HalvingExhausted",
            Error::NotZeroDimensional(_) => "NotZeroDimensional",
            Error::NotOneDimensional(_) => "NotOneDimensional",
            Error::SeparatingFormBudget(_) => "SeparatingFormBudget",
            Error::NonRationalSlack { .. } => "NonRationalSlack",
            Error::TooManyConstraints { .. } => "TooManyConstraints",
            Error::SingularMatrix => "SingularMatrix",
            Error::CoordinateChangeExhausted(_) => "CoordinateChangeExhausted",
            Error::RetriesExhausted(_) => "RetriesExhausted",
            Error::RadiusDegenerate(_) => "RadiusDegenerate",
            Error::RadiusNotCertified(_) => "RadiusNotCertified",
            Error::EmptySphereSection => "EmptySphereSection",
            Error::AssumptionViolation(_) => "AssumptionViolation",
            Error::LicqViolated => "LicqViolated",
            Error::PointNotFeasible(_) => "PointNotFeasible",
            Error::PointNotKkt => "PointNotKkt",
            Error::Io(_) => "Io",
            Error::Internal(_) => "Internal",
        }
    }

    /// Errors caused by the problem statement itself rather than by a
    /// theory-level failure of the pipeline.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::UnknownVariable { .. }
                | Error::InvalidInput(_)
                | Error::RingMismatch
                | Error::NonRationalSlack { .. }
                | Error::TooManyConstraints { .. }
                | Error::PointNotFeasible(_)
                | Error::RadiusNotCertified(_)
                | Error::Io(_)
        )
    }
}
