use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument within {distance:e} of the pole at s = 1")]
    PoleAtOne { distance: f64 },
    #[error("s = {re} + {im}i lies outside the validated region")]
    OutOfValidatedRegion { re: f64, im: f64 },
    #[error("|zeta(s)| = {modulus:e} is too close to a zero for a logarithmic derivative")]
    NearZeroOfZeta { modulus: f64 },
    #[error("t = {t} is below the supported minimum {min}")]
    DomainTooSmall { t: f64, min: f64 },
    #[error("series failed to converge: {0}")]
    ConvergenceFailure(String),
    #[error("Newton iteration for Gram point {n} did not converge")]
    NoConvergence { n: i64 },
    #[error("bracket [{lo}, {hi}] has no sign change of Z")]
    LostBracket { lo: f64, hi: f64 },
    #[error("Z(t) imaginary residual {residual:e} at t = {t} exceeds tolerance")]
    ResidualTooLarge { t: f64, residual: f64 },
    #[error("height {requested} exceeds the certified height {certified}")]
    BeyondCertifiedHeight { requested: f64, certified: f64 },
    #[error("zero-count audit failed at T = {height}: located {located}, smooth term {smooth:.4}")]
    AuditFailed { height: f64, located: usize, smooth: f64 },
    #[error("corrupt zero cache: {0}")]
    CorruptCache(String),
    #[error("cache format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("|alpha| = {alpha} exceeds the admissible bound {bound}")]
    AlphaOutOfRange { alpha: f64, bound: f64 },
    #[error("delta1 = {delta1:e} is too close to 0; request limit mode")]
    PoleUncancelled { delta1: f64 },
    #[error("delta1 = {delta1} lies outside [{lo}, {hi}]")]
    OutsideRegion { delta1: f64, lo: f64, hi: f64 },
    #[error("|delta| log T = {value} is outside the expansion zone (0, 1]")]
    OutsideExpansionZone { value: f64 },
    #[error("|delta2| = {delta2} exceeds {bound}")]
    ShiftOutOfRange { delta2: f64, bound: f64 },
    #[error("bilinear and squared forms disagree at gamma = {gamma}: {bilinear} vs {squared}")]
    EvaluationMismatch {
        gamma: f64,
        bilinear: f64,
        squared: f64,
    },
    #[error("empty grid")]
    EmptyGrid,
    #[error("inequality step {step} failed at T = {t:e}, delta1 = {delta1}")]
    ChainStepFailed { step: String, t: f64, delta1: f64 },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
