use std::fmt;

use thiserror::Error;

/// Errors produced by matrix construction, functional calculus, means and quadrature.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: dimension mismatch, non-finite entries, asymmetry, bad file contents.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A spectral precondition failed. `eigenvalue` is the offending eigenvalue.
    #[error("{context}: min eigenvalue {eigenvalue:e}")]
    DomainViolation { context: String, eigenvalue: f64 },

    /// A scalar parameter lies outside its admissible interval.
    #[error("parameter {name} = {value} outside {admissible}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        admissible: Interval,
    },

    /// The eigensolver did not converge or produced non-finite output.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(context: impl Into<String>, eigenvalue: f64) -> Self {
        Error::DomainViolation {
            context: context.into(),
            eigenvalue,
        }
    }
}

/// One end of an [`Interval`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Endpoint {
    Open(f64),
    Closed(f64),
    Unbounded,
}

/// A real interval with open, closed or unbounded ends.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub lower: Endpoint,
    pub upper: Endpoint,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lower: Endpoint::Unbounded,
        upper: Endpoint::Unbounded,
    };

    pub const fn open(lo: f64, hi: f64) -> Self {
        Interval {
            lower: Endpoint::Open(lo),
            upper: Endpoint::Open(hi),
        }
    }

    pub const fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lower: Endpoint::Closed(lo),
            upper: Endpoint::Closed(hi),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        let above = match self.lower {
            Endpoint::Open(lo) => x > lo,
            Endpoint::Closed(lo) => x >= lo,
            Endpoint::Unbounded => true,
        };
        let below = match self.upper {
            Endpoint::Open(hi) => x < hi,
            Endpoint::Closed(hi) => x <= hi,
            Endpoint::Unbounded => true,
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lower {
            Endpoint::Open(lo) => write!(f, "({lo}, ")?,
            Endpoint::Closed(lo) => write!(f, "[{lo}, ")?,
            Endpoint::Unbounded => write!(f, "(-inf, ")?,
        }
        match self.upper {
            Endpoint::Open(hi) => write!(f, "{hi})"),
            Endpoint::Closed(hi) => write!(f, "{hi}]"),
            Endpoint::Unbounded => write!(f, "inf)"),
        }
    }
}
