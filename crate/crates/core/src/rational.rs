use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// An exact fraction kept in lowest terms with a positive denominator.
///
/// Balances and balance thresholds are compared through this type so that
/// fairness checks never depend on floating point rounding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(Ratio::new(numerator, denominator)))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(Ratio::from_integer(value))
    }

    /// `1 / t` for a positive integer threshold.
    pub fn reciprocal_of(t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::new(1, t as i64)
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator() as f64 / self.denominator() as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator() == 1 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
