use thiserror::Error;

/// Crate-wide error type.
///
/// Geometric failure modes (umbilic, rank-zero, parabolic, ...) are kept
/// distinct from numerical/plumbing ones so callers can route them into
/// report warnings instead of aborting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("surface must have exactly 3 components, found {0}")]
    Arity(usize),

    #[error("unknown identifier `{0}` at byte {1}")]
    UnknownIdentifier(String, usize),

    #[error("unknown function `{0}` at byte {1}")]
    UnknownFunction(String, usize),

    #[error("domain violation: {what} in `{subtree}`")]
    Domain { what: String, subtree: String },

    #[error("non-finite value encountered in `{0}`")]
    NonFinite(String),

    #[error("jet base points differ: ({0}, {1}) vs ({2}, {3})")]
    BasePointMismatch(f64, f64, f64, f64),

    #[error("division by a jet with zero constant term")]
    JetDivisionByZero,

    #[error("square root of a jet with non-positive constant term ({0})")]
    JetSqrtNonPositive(f64),

    #[error("log of a jet with non-positive constant term ({0})")]
    JetLogNonPositive(f64),

    #[error("jet order {have} insufficient, need at least {need}")]
    InsufficientOrder { need: usize, have: usize },

    #[error("rank-deficient surface: |f_u x f_v| = {0} at base point")]
    RankDeficient(f64),

    #[error("umbilic point: shape-operator discriminant {0} below tolerance")]
    UmbilicPoint(f64),

    #[error("not in curvature-line coordinates (|F| = {f}, |M| = {m})")]
    NotCurvatureLine { f: f64, m: f64 },

    #[error("point is not singular for this surface: {0}")]
    NotSingular(String),

    #[error("rank of differential is zero at the point")]
    RankZero,

    #[error("parabolic point: |kappa| = {0} below tolerance, focal surface undefined")]
    ParabolicPoint(f64),

    #[error("degenerate seed: identifier gradient {0:e} below tolerance")]
    DegenerateSeed(f64),

    #[error("continuation step failed: {0}")]
    StepFailure(String),

    #[error("not a cuspidal edge at the sample: {0}")]
    NotCuspidalEdge(String),

    #[error("hypothesis failure: {0}")]
    Hypothesis(String),

    #[error("parallel distance t must be nonzero")]
    ZeroDistance,

    #[error("undecidable from finite jet data: {0}")]
    Undecidable(String),

    #[error("invalid job: {0}")]
    InvalidJob(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
