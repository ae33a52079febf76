//! Exact fractions and the extended value type used for unpopularity factors.

use std::fmt;

use num_traits::{Signed, Zero};

/// Exact fraction, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::Ratio<i64>;

/// A non-negative rational or `+inf`.
///
/// Variant order gives the natural ordering: every finite value is below
/// `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Finite(Rational),
    Infinite,
}

impl Factor {
    pub fn zero() -> Self {
        Factor::Finite(Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Factor::Finite(Rational::new(num, den))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Factor::Infinite)
    }

    pub fn finite(&self) -> Option<Rational> {
        match *self {
            Factor::Finite(r) => Some(r),
            Factor::Infinite => None,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Finite(r) => write!(f, "{}", format_fraction(r)),
            Factor::Infinite => f.write_str("inf"),
        }
    }
}

/// `x/y` with the denominator always shown, e.g. `3/1`.
pub fn format_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Integer when the denominator is one, `x/y` otherwise. Used for edge weights.
pub fn format_weight(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format_fraction(r)
    }
}

pub(crate) fn is_non_negative(r: &Rational) -> bool {
    !r.is_negative()
}
