use thiserror::Error;

/// Every failure the engines can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {reason} at ({a}, {b}, {c})")]
    NotAGroup {
        reason: &'static str,
        a: usize,
        b: usize,
        c: usize,
    },

    #[error("malformed cayley table: {0}")]
    BadTable(String),

    #[error("unknown group name `{0}`")]
    UnknownName(String),

    #[error("group order {order} exceeds the configured maximum {max}")]
    Overflow { order: usize, max: usize },

    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("subset is not a subgroup")]
    NotASubgroup,

    #[error("subset size mismatch: subset has length {got}, group order is {want}")]
    OrderMismatch { got: usize, want: usize },

    #[error("element {elem} out of range for group of order {order}")]
    ElementOutOfRange { elem: usize, order: usize },

    #[error("window {window} too small (need at least {needed})")]
    WindowTooSmall { window: u64, needed: u64 },

    #[error("radius {radius} too small (need at least {needed})")]
    RadiusTooSmall { radius: u64, needed: u64 },

    #[error("too few terms: {got} generated, {needed} needed")]
    TooFewTerms { got: usize, needed: usize },

    #[error("sieve bound {bound} exceeds cap {cap}")]
    SieveCapExceeded { bound: u64, cap: u64 },

    #[error("invalid difference set: {0}")]
    InvalidDifference(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for failures caused by hitting a computational limit rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. }
                | Error::Overflow { .. }
                | Error::SieveCapExceeded { .. }
                | Error::RadiusTooSmall { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
