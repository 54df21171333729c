use thiserror::Error;

/// Errors produced while building fuzzy numbers, level weights or WABL values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WablError {
    #[error("non-finite value {value} in {what}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("trapezoid parameters must satisfy l <= m_l <= m_r <= r, got ({l}, {m_l}, {m_r}, {r})")]
    UnorderedTrapezoid { l: f64, m_l: f64, m_r: f64, r: f64 },

    #[error("interval bounds out of order: lo = {lo} > hi = {hi}")]
    UnorderedInterval { lo: f64, hi: f64 },

    #[error("fuzzy number has no points")]
    NoPoints,

    #[error("support points must be strictly increasing (x = {prev} followed by x = {next})")]
    UnsortedPoints { prev: f64, next: f64 },

    #[error("membership degree {mu} at x = {x} is outside (0, 1]")]
    InvalidMembership { x: f64, mu: f64 },

    #[error("fuzzy number is not normal: maximal membership is {max_mu}")]
    NotNormal { max_mu: f64 },

    #[error("levels must be strictly increasing in (0, 1] (a leading 0 is allowed), got {0:?}")]
    InvalidLevels(Vec<f64>),

    #[error("level {alpha} is outside {range}")]
    AlphaOutOfRange { alpha: f64, range: &'static str },

    #[error("alpha-cut at level {alpha} is empty (maximal membership is {max_mu})")]
    EmptyCut { alpha: f64, max_mu: f64 },

    #[error("no point of the universe has positive membership")]
    EmptyDiscretization,

    #[error("universe must be non-empty and strictly increasing")]
    InvalidUniverse,

    #[error("number of level sub-intervals must be at least 1")]
    ZeroSubintervals,

    #[error("optimism coefficient {0} is outside [0, 1]")]
    InvalidOptimism(f64),

    #[error("level weight {mass} at level {alpha} is negative")]
    NegativeMass { alpha: f64, mass: f64 },

    #[error("{levels} levels but {masses} masses")]
    LengthMismatch { levels: usize, masses: usize },

    #[error("level weights sum to {sum}, expected 1")]
    Normalization { sum: f64 },

    #[error("cannot normalize weights that are all zero")]
    ZeroTotalWeight,

    #[error("nothing to rank")]
    NoAlternatives,

    #[error("alternative id must be non-empty")]
    EmptyId,

    #[error("duplicate alternative id `{0}`")]
    DuplicateId(String),

    #[error("{kind} alternatives need {needed}")]
    MissingWeights { kind: &'static str, needed: &'static str },

    #[error("alternative `{id}`: {source}")]
    Alternative {
        id: String,
        #[source]
        source: Box<WablError>,
    },
}

pub type Result<T, E = WablError> = std::result::Result<T, E>;

pub(crate) fn finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(WablError::NonFinite { what, value })
    }
}
