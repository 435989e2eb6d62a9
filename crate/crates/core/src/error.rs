use thiserror::Error;

/// Errors raised by the distance, domain and bound routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point lies outside the open model domain of a 1-D distance.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// An artanh argument is too close to 1 to be evaluated reliably.
    #[error("precision loss: artanh argument {0} is within 1e-15 of 1")]
    PrecisionLoss(f64),

    #[error("invalid strip: lo = {lo} must be below hi = {hi}")]
    InvalidStrip { lo: f64, hi: f64 },

    /// Malformed domain file (parse errors, wrong vector lengths).
    #[error("schema error: {0}")]
    Schema(String),

    /// Well-formed domain file that violates a semantic rule.
    #[error("semantic error: {0}")]
    Semantic(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),

    /// The supporting hyperplane is not unique (zero or several active constraints).
    #[error("ambiguous support: active constraints {active:?}")]
    AmbiguousSupport { active: Vec<usize> },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no admissible polydisc radius around {0:?}")]
    ZeroRadius(Vec<f64>),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("analytic disc does not map into the domain: {0}")]
    Inclusion(String),

    #[error("path generation failed: {0}")]
    PathGeneration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing bound {0} in sweep rows")]
    MissingBounds(String),

    #[error("wrong path kind for {theorem}: {kind}")]
    WrongPathKind { theorem: String, kind: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
