//! The sign character δ ∈ ℤ/2ℤ that distinguishes the even and odd signed
//! Mellin transforms and tags `(sg x)^δ` factors.

use std::fmt;
use std::ops::Add;

/// An element of ℤ/2ℤ. `Even` is 0, `Odd` is 1; addition is mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// 0 for even, 1 for odd.
    #[inline]
    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Parity of an arbitrary integer.
    #[inline]
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^δ`.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    /// `(sg x)^δ` for real x (0 maps to 1 for the even character, 0 for the odd).
    #[inline]
    pub fn sign_of(self, x: f64) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => {
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// `i^δ`.
    #[inline]
    pub fn i_pow(self) -> crate::C64 {
        match self {
            Parity::Even => crate::c(1.0, 0.0),
            Parity::Odd => crate::c(0.0, 1.0),
        }
    }

    #[inline]
    pub fn flip(self) -> Parity {
        self + Parity::Odd
    }

    /// Whether the integer n has this parity.
    #[inline]
    pub fn matches(self, n: i64) -> bool {
        Parity::of(n) == self
    }
}

impl Add for Parity {
    type Output = Parity;
    #[inline]
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}
