use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite sample at flat index {0}")]
    NonFinite(usize),
    #[error("invalid exponent {value} on axis {axis}")]
    InvalidExponent { axis: usize, value: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("tail mass fraction {fraction:e} on axis {axis} exceeds {threshold:e}")]
    TailMass {
        axis: usize,
        fraction: f64,
        threshold: f64,
    },
    #[error("exponent identity 1/p + 1 = 1/q + 1/r violated on axis {axis}: {lhs} != {rhs}")]
    ExponentIdentity { axis: usize, lhs: f64, rhs: f64 },
    #[error("exponent split out of range on axis {axis}: {reason}")]
    SplitOutOfRange { axis: usize, reason: String },
    #[error("exponent ordering violated on axis {axis}: q = {q}, p = {p}")]
    ExponentOrdering { axis: usize, q: f64, p: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("heat kernel under-resolved on axis {axis}: t = {t:e} < h^2 = {h2:e}")]
    KernelUnderResolved { axis: usize, t: f64, h2: f64 },
    #[error("operation requires a periodic grid")]
    NotPeriodic,
    #[error("axis {axis} out of range for dimension {n}")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("evolved field reaches the boundary at every requested time")]
    DomainEscape,
    #[error("time {t:e} outside the trajectory range ({lo:e}, {hi:e}]")]
    TimeOutOfRange { t: f64, lo: f64, hi: f64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("contraction certificate fails: product {product} >= 1")]
    SmallnessGuard { product: f64 },
    #[error("horizon shrank below {t0:e} without meeting the smallness condition")]
    HorizonUnderflow { t0: f64 },
    #[error("time step {dt:e} violates the CFL bound {limit:e}")]
    Cfl { dt: f64, limit: f64 },
    #[error("empty trajectory")]
    EmptyTrajectory,
    #[error("format error: {0}")]
    Format(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
