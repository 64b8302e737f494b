use thiserror::Error;

/// Errors raised across the crate.
///
/// Report-valued checks never return these for a failed property; they
/// are reserved for invalid input and for operations whose contract cannot
/// be met.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (‖a − a*‖ = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("elements belong to different models: {left} vs {right}")]
    ModelMismatch { left: String, right: String },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("payload violates the model constraint: {0}")]
    NotAMember(String),

    #[error("operation requires a matrix model, got {0}")]
    UnsupportedModel(String),

    #[error("element is not a tripotent (‖{{x,x,x}} − x‖ = {deviation:e})")]
    NotATripotent { deviation: f64 },

    #[error("L(u,u) eigenvalue {eigenvalue} is farther than {radius:e} from {{0, 1/2, 1}}")]
    SpectrumOutOfRange { eigenvalue: f64, radius: f64 },

    #[error("order criteria disagree: {{u,v,u}} deviation {primary:e}, definitional deviation {definitional:e}")]
    InconsistentCriteria { primary: f64, definitional: f64 },

    #[error("tripotents are not comparable")]
    NotComparable,

    #[error("parts {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),

    #[error("invalid tolerance profile: {0}")]
    InvalidTolerance(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("snapshot closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("map is not a bijection: {0}")]
    NotBijective(String),

    #[error("logic has no greatest element: {0}")]
    NotUnital(String),

    #[error("source is not regular: {0}")]
    NotRegular(String),

    #[error("tabulated projections span dimension {rank}, need {needed}")]
    SpanDeficient { rank: usize, needed: usize },

    #[error("table is inconsistent with any linear functional: {witness}")]
    Inconsistent { witness: String },

    #[error("map is not a quantum logic morphism: {0}")]
    NotAMorphism(String),

    #[error("certification failed for {identity}: deviation {deviation:e}")]
    CertificationFailed { identity: String, deviation: f64 },

    #[error("consistency failed between entries {u} and {v}: deviation {deviation:e}")]
    ConsistencyFailed { u: usize, v: usize, deviation: f64 },

    #[error("range tripotent is not covered by the system: {0}")]
    OutOfTable(String),

    #[error("snapshot does not contain the identity tripotent")]
    NotUnitalSnapshot,

    #[error("numerical breakdown: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),

    #[error("unknown gallery example: {0}")]
    UnknownExample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
