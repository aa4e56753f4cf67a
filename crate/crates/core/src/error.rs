use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} lies outside the monomial table of length {len}")]
    IndexOutOfTable { index: usize, len: usize },

    #[error("coefficient a_{index} (|a| = {magnitude:e}) lies off the lacunary support {p}n+{m}")]
    SupportViolation {
        index: usize,
        magnitude: f64,
        p: usize,
        m: usize,
    },

    #[error("weight degrees match neither parity case: {0}")]
    ParityInconsistent(String),

    #[error("no sign change of the residual on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("tail bound unavailable: {0}")]
    UnboundedTail(String),

    #[error("closed form {closed} and solver root {solved} disagree")]
    ClosedFormMismatch { closed: f64, solved: f64 },

    #[error("empty corpus for {0}")]
    EmptyCorpus(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius r = {r} outside [0, 1)")))
    }
}
