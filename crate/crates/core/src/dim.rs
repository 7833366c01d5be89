use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::algebra::{Poly, RationalFunction};
use crate::error::HaarError;

/// The dimension parameter: either the symbol `d` or a fixed positive integer.
///
/// Symbolic results are valid for every `d >= n`; a fixed `d < n` switches
/// Weingarten tables to the truncated (pseudo-inverse) sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Symbolic,
    Fixed(u32),
}

impl Dim {
    /// `d` as a rational function: the variable, or a constant.
    pub fn as_rf(self) -> RationalFunction {
        match self {
            Dim::Symbolic => RationalFunction::var(),
            Dim::Fixed(d) => RationalFunction::from_int(d),
        }
    }

    /// The linear polynomial `a*d + b`, evaluated when `d` is fixed.
    pub fn affine(self, a: i64, b: i64) -> Poly {
        match self {
            Dim::Symbolic => Poly::from_i64s(&[b, a]),
            Dim::Fixed(d) => Poly::constant(BigInt::from(a) * d + b),
        }
    }

    pub fn fixed(self) -> Option<u32> {
        match self {
            Dim::Symbolic => None,
            Dim::Fixed(d) => Some(d),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Symbolic => write!(f, "d"),
            Dim::Fixed(d) => write!(f, "{d}"),
        }
    }
}

impl FromStr for Dim {
    type Err = HaarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "d" => Ok(Dim::Symbolic),
            t => match t.parse::<u32>() {
                Ok(d) if d > 0 => Ok(Dim::Fixed(d)),
                _ => Err(HaarError::InvalidDimension(s.to_string())),
            },
        }
    }
}
