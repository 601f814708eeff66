use crate::C64;
use std::fmt;

/// Everything that can go wrong outside plain arithmetic. Evaluation routines
/// stay infallible by validating parameters up front (constructors reject any
/// configuration whose poles touch the contour), so most variants surface at
/// construction or solver entry points.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `q*alpha = 1`: the coupling `g = 1/(1 - q*alpha)` blows up and the
    /// one-term closure does not exist.
    DegenerateClosure { q: i8, alpha: C64 },
    /// A pole of `2gz/(1 + gz^2)` sits on the contour `Im z = -eps`.
    ContourSingularity { root: C64, epsilon: f64 },
    /// A scalar argument outside its domain (step, interval, epsilon, ...).
    InvalidParameter { what: &'static str, value: f64 },
    /// A function evaluation produced NaN/Inf where a finite value is required.
    NonFinite { what: &'static str, x: f64 },
    /// Grid construction needs `x_min < x_max` (finite) and at least 3 points.
    InvalidGrid { reason: &'static str },
    /// Tridiagonal elimination hit a pivot below 1e-14: the shift is an
    /// eigenvalue to machine precision.
    SingularShift { pivot: f64 },
    /// Paired slices must have equal lengths.
    LengthMismatch { left: usize, right: usize },
    /// A check needed more usable samples than it got (e.g. every ratio
    /// denominator fell below the floor).
    TooFewSamples { needed: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateClosure { q, alpha } => write!(
                f,
                "degenerate closure: q*alpha = 1 at q = {q:+}, alpha = {alpha} (coupling g = 1/(1 - q*alpha) undefined)"
            ),
            Error::ContourSingularity { root, epsilon } => write!(
                f,
                "superpotential pole at z = {root} lies on the contour Im z = -{epsilon}"
            ),
            Error::InvalidParameter { what, value } => {
                write!(f, "invalid {what}: {value}")
            }
            Error::NonFinite { what, x } => {
                write!(f, "non-finite {what} at x = {x}")
            }
            Error::InvalidGrid { reason } => write!(f, "invalid grid: {reason}"),
            Error::SingularShift { pivot } => write!(
                f,
                "shifted system is numerically singular (pivot {pivot:.3e} < 1e-14); the shift is an eigenvalue"
            ),
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::TooFewSamples { needed, got } => {
                write!(f, "too few usable samples: needed {needed}, got {got}")
            }
        }
    }
}

impl std::error::Error for Error {}
