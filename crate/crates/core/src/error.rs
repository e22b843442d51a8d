use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid interval set: {0}")]
    InvalidSet(String),

    #[error("evaluation at atom position x = {x}")]
    Pole { x: f64 },

    #[error("evaluation at density edge x = {x} (real part diverges to {}infinity)", if *.positive { "+" } else { "-" })]
    DensityEdge { x: f64, positive: bool },

    #[error("pole of the transformed family at x = {x}")]
    FamilyPole { x: f64 },

    #[error("point x = {x} lies in the support of the measure")]
    InSupport { x: f64 },

    #[error("point x = {x} is not in the set")]
    NotInSet { x: f64 },

    #[error("threshold must be positive, got {0}")]
    NonPositiveThreshold(f64),

    #[error("operation requires a purely atomic measure")]
    NotAtomic,

    #[error("set is empty")]
    EmptySet,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid Cantor index (n = {n}, j = {j})")]
    InvalidIndex { n: u32, j: u64 },

    #[error("index (1,1) has no predecessor")]
    NoPredecessor,

    #[error("depth {depth} exceeds the configured cap {cap}")]
    DepthCap { depth: u64, cap: u32 },

    #[error("seed k(1,1) = {0} is too small (need at least 2)")]
    SeedTooSmall(u64),

    #[error("k schedule overflows 64-bit integers beyond position {0}")]
    ScheduleOverflow(u64),

    #[error("root bracket failed: {0}")]
    Bracket(String),

    #[error("unknown check selector {0:?}")]
    UnknownSelector(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
