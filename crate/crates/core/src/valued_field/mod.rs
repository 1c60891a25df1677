//! The coefficient field: truncated generalized power series in `t` with
//! rational coefficients and rational exponents.
//!
//! The absolute value is normalized so that `log|t| = -1`; every `log|x|` is
//! therefore an exact rational, and the value group is all of `Q`.

mod series;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::sync::atomic::{AtomicI64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub use series::PuiseuxNumber;
pub use text::{format_puiseux, parse_puiseux, parse_rat};

/// Exact rational number in canonical form.
pub type Rat = BigRational;

/// Default relative depth (in exponent units past the leading term) kept by
/// inversion and division of series that do not terminate.
pub const DEFAULT_PRECISION: i64 = 32;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

static WORKING_PRECISION: AtomicI64 = AtomicI64::new(DEFAULT_PRECISION);

/// Process-wide working precision used when no explicit precision is given.
pub fn default_precision() -> Rat {
    rat(WORKING_PRECISION.load(AtomicOrdering::Relaxed))
}

/// Overrides the working precision for the rest of the process. Values
/// below 1 are rejected.
pub fn set_default_precision(units: i64) -> crate::Result<()> {
    if units < 1 {
        return Err(crate::Error::Precondition(format!(
            "working precision must be positive, got {units}"
        )));
    }
    WORKING_PRECISION.store(units, AtomicOrdering::Relaxed);
    Ok(())
}

/// `log|x|` for `x` in the field: `-inf` only for zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LogAbs {
    NegInfinity,
    Finite(Rat),
}

impl LogAbs {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            LogAbs::NegInfinity => None,
            LogAbs::Finite(r) => Some(r),
        }
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, LogAbs::NegInfinity)
    }

    /// Returns the finite value or the supplied error.
    pub fn expect_finite(self, what: &str) -> crate::Result<Rat> {
        match self {
            LogAbs::Finite(r) => Ok(r),
            LogAbs::NegInfinity => Err(crate::Error::Degenerate(format!("{what} is zero"))),
        }
    }
}

impl PartialOrd for LogAbs {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogAbs {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogAbs::NegInfinity, LogAbs::NegInfinity) => Ordering::Equal,
            (LogAbs::NegInfinity, _) => Ordering::Less,
            (_, LogAbs::NegInfinity) => Ordering::Greater,
            (LogAbs::Finite(a), LogAbs::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for LogAbs {
    type Output = LogAbs;

    fn add(self, rhs: LogAbs) -> LogAbs {
        match (self, rhs) {
            (LogAbs::Finite(a), LogAbs::Finite(b)) => LogAbs::Finite(a + b),
            _ => LogAbs::NegInfinity,
        }
    }
}

impl From<Rat> for LogAbs {
    fn from(r: Rat) -> Self {
        LogAbs::Finite(r)
    }
}

impl fmt::Display for LogAbs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogAbs::NegInfinity => f.write_str("-inf"),
            LogAbs::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// `log|x|`; multiplicative: `log_abs(xy) = log_abs(x) + log_abs(y)`.
pub fn log_abs(x: &PuiseuxNumber) -> LogAbs {
    x.log_abs()
}

pub(crate) fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}
