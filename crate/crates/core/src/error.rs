//! Error type shared by all modules.

use crate::C64;
use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument within [`crate::POLE_TOL`] of a pole of the requested function.
    Pole { location: C64, context: &'static str },
    /// Input outside the operation's domain.
    Domain { message: String },
    /// A parity precondition (n ≡ δ mod 2, matching sign character) failed.
    Parity { message: String },
    /// The continuation ladder needs a derivative order the test function
    /// does not provide.
    DerivativeDepth { needed: usize, available: usize },
    /// A vertical contour could not be placed clear of the declared pole
    /// lattices.
    ContourCollision { abscissa: f64, pole: C64 },
    /// The target line of a contour shift passes through a pole.
    PoleOnTargetLine { line: f64, pole: C64 },
    /// Estimated quadrature truncation tail exceeds the tolerance.
    Truncation { estimate: f64, tolerance: f64 },
    /// Certified series tail bound exceeds the tolerance.
    Convergence { bound: f64, tolerance: f64 },
    /// Result magnitude exceeds the floating-point exponent range.
    Overflow { context: &'static str },
    /// Oscillatory quadrature asked for a frequency outside its certified range.
    Oscillation { y: f64, max: f64 },
    /// Detected pole order exceeds the declared bound.
    OrderOverflow { detected: usize, declared: usize },
    /// Operation requires a primitive character.
    Primitivity { q: u64 },
    /// Malformed input text (coefficient files).
    Parse { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { location, context } => {
                write!(f, "{context}: argument {location} is within tolerance of a pole")
            }
            Error::Domain { message } => write!(f, "domain error: {message}"),
            Error::Parity { message } => write!(f, "parity error: {message}"),
            Error::DerivativeDepth { needed, available } => write!(
                f,
                "continuation needs derivative order {needed}, test function provides {available}"
            ),
            Error::ContourCollision { abscissa, pole } => write!(
                f,
                "contour at Re s = {abscissa} collides with pole lattice point {pole}"
            ),
            Error::PoleOnTargetLine { line, pole } => {
                write!(f, "target line Re s = {line} passes through pole {pole}")
            }
            Error::Truncation { estimate, tolerance } => write!(
                f,
                "contour truncation tail {estimate:.3e} exceeds tolerance {tolerance:.3e}"
            ),
            Error::Convergence { bound, tolerance } => write!(
                f,
                "certified tail bound {bound:.3e} exceeds tolerance {tolerance:.3e}"
            ),
            Error::Overflow { context } => write!(f, "{context}: overflow"),
            Error::Oscillation { y, max } => write!(
                f,
                "oscillation frequency |y| = {y} outside certified range |y| <= {max}"
            ),
            Error::OrderOverflow { detected, declared } => write!(
                f,
                "detected pole order {detected} exceeds declared bound {declared}"
            ),
            Error::Primitivity { q } => {
                write!(f, "character mod {q} is imprimitive; identity requires primitivity")
            }
            Error::Parse { message } => write!(f, "parse error: {message}"),
        }
    }
}

impl std::error::Error for Error {}
