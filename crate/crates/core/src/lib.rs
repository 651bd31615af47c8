//! Numerical calculus of signed Mellin transforms on the real line.
//!
//! The library is organized around the signed Mellin transform
//! `M_δ σ(s) = ∫ (sg x)^δ |x|^{s-1} σ(x) dx` and the kernel family
//! `G_δ(s) = 2 i^δ (2π)^{-s} Γ(s) cos(π(s-δ)/2)`, which together encode the
//! functional equations of ζ(s), Dirichlet L(s,χ), and GL(2) automorphic
//! L-functions, as well as the Voronoi-type integral transforms `T_{α,η}`
//! and their singularity calculus.
//!
//! Modules:
//!
//! - [`special`]: complex Γ, log Γ, upper incomplete Γ, complex erf, the
//!   kernels `G_δ(s)`, and the Gamma-separation factors `c(β)`, `h(s)`, `E(s)`.
//! - [`mellin`]: signed Mellin transforms of test functions, numerical Mellin
//!   inversion along vertical contours, Mellin–Parseval pairing, and
//!   asymptotic expansion by contour shifting with residue collection.
//! - [`dirichlet`]: Dirichlet characters, Gauss sums, Hurwitz-zeta backed
//!   continuation of ζ and L(s,χ), and functional-equation residuals.
//! - [`voronoi`]: the `T_{α,η}` operators (direct oscillatory and Mellin
//!   routes), composed GL(2)/GL(3) kernels, and singularity-type prediction
//!   versus extraction.
//! - [`gl2`]: GL(2) automorphic L-functions from coefficient data
//!   (Ramanujan τ), smoothed incomplete-Gamma continuation, and the
//!   converse-direction diagnostic.
//!
//! All operations are pure; every public type is immutable after
//! construction, so values can be shared freely across threads.

pub mod dirichlet;
pub mod error;
pub mod gl2;
pub mod mellin;
pub mod parity;
pub mod quad;
pub mod special;
pub mod voronoi;

pub use error::{Error, Result};
pub use parity::Parity;

/// The complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Convenience constructor for [`C64`].
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Arguments closer than this to a pole lattice raise [`Error::Pole`] instead
/// of returning a huge value, forcing contour code to keep its distance.
pub const POLE_TOL: f64 = 1e-9;
