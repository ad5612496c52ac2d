use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("valuation of the zero function is undefined")]
    UndefinedValuation,
    #[error("series valuation inconclusive: every coefficient vanished up to truncation order {cap}")]
    InconclusiveValuation { cap: usize },
    #[error("evaluation error: {0}")]
    Evaluation(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("value {0} is not generated by the SAGBI values")]
    NotInSemigroup(String),
    #[error("semigroup has no generators")]
    EmptySemigroup,
    #[error("need at least {needed} Hilbert samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("exact polytope routines support ambient dimension <= 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("no order-preserving projection: {0}")]
    NoProjection(String),
    #[error("inconsistent projection: {0}")]
    InconsistentProjection(String),
    #[error("family construction failed: {0}")]
    FamilyConstruction(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("chart error: {0}")]
    Chart(String),
    #[error("scale factor must be nonzero")]
    InvalidScale,
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("critical point of Re(π): projected gradient norm {0:e}")]
    CriticalPoint(f64),
    #[error("symplectic form is degenerate on the tangent frame")]
    DegenerateForm,
    #[error("flow failed: {0}")]
    Flow(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
