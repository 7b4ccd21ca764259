use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside its admissible range.
    #[error("{param} = {value} is outside the admissible range {range}")]
    Domain {
        param: &'static str,
        value: f64,
        range: &'static str,
    },

    /// An index has no entry in the requested sequence.
    #[error("index {index} out of range: {reason}")]
    Index { index: usize, reason: &'static str },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("entrywise domination fails at index {index}: {detail}")]
    Domination { index: usize, detail: String },

    #[error("window {lo}..={hi} has {len} points, at least {min} required")]
    Window {
        lo: usize,
        hi: usize,
        len: usize,
        min: usize,
    },

    /// Bisection or pivot-retry loop did not reach its target.
    #[error("not converged: {0}")]
    NotConverged(String),

    #[error("overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn domain(param: &'static str, value: impl Into<f64>, range: &'static str) -> Self {
        Error::Domain {
            param,
            value: value.into(),
            range,
        }
    }

    /// True for errors caused by inputs (as opposed to numerical failure).
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::NotConverged(_) | Error::Overflow(_))
    }
}
