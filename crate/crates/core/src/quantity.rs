//! Fixed-point energy quantities.
//!
//! Every ledger cell is held as an integer count of hundredths of a Mtce
//! (million tonnes of coal equivalent), so sums and differences are exact.
//! Multiplication by a policy fraction goes through [`Decimal`] and is
//! rounded back to hundredths, half away from zero.

use std::fmt;
use std::str::FromStr;

use rust_decimal::{Decimal, RoundingStrategy};

use crate::error::{Error, Result};

/// Decimal places carried by every [`Mtce`] value.
pub const SCALE: u32 = 2;

/// An energy amount in Mtce with two fractional digits.
///
/// Signed so that transformation rows (inputs negative, outputs positive) can
/// share the type; consumption cells are checked non-negative where they are
/// constructed.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mtce(i64);

impl Mtce {
    pub const ZERO: Mtce = Mtce(0);

    pub const fn from_hundredths(hundredths: i64) -> Self {
        Mtce(hundredths)
    }

    pub const fn hundredths(self) -> i64 {
        self.0
    }

    /// Rounds an arbitrary decimal to hundredths, half away from zero.
    pub fn from_decimal(value: Decimal) -> Result<Self> {
        let rounded = value.round_dp_with_strategy(SCALE, RoundingStrategy::MidpointAwayFromZero);
        let scaled = rounded
            .checked_mul(Decimal::ONE_HUNDRED)
            .ok_or(Error::ArithmeticOverflow("Mtce conversion"))?;
        i64::try_from(scaled)
            .map(Mtce)
            .map_err(|_| Error::ArithmeticOverflow("Mtce conversion"))
    }

    pub fn to_decimal(self) -> Decimal {
        Decimal::new(self.0, SCALE)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn checked_add(self, rhs: Mtce) -> Result<Mtce> {
        self.0
            .checked_add(rhs.0)
            .map(Mtce)
            .ok_or(Error::ArithmeticOverflow("Mtce addition"))
    }

    /// `self - rhs`, refusing to go below zero.
    pub fn checked_deduct(self, rhs: Mtce) -> Result<Mtce> {
        if self < rhs {
            return Err(Error::DeductionExceedsTotal {
                total: self,
                deduction: rhs,
                context: "quantity subtraction".into(),
            });
        }
        Ok(Mtce(self.0 - rhs.0))
    }

    /// Signed difference, for deltas between scenarios.
    pub fn signed_sub(self, rhs: Mtce) -> Result<Mtce> {
        self.0
            .checked_sub(rhs.0)
            .map(Mtce)
            .ok_or(Error::ArithmeticOverflow("Mtce subtraction"))
    }

    /// Checked sum of an iterator of quantities.
    pub fn try_sum<I: IntoIterator<Item = Mtce>>(items: I) -> Result<Mtce> {
        items
            .into_iter()
            .try_fold(Mtce::ZERO, |acc, q| acc.checked_add(q))
    }

    pub fn abs_diff(self, rhs: Mtce) -> Mtce {
        Mtce((self.0 - rhs.0).abs())
    }
}

impl fmt::Display for Mtce {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{sign}{}.{:02}", abs / 100, abs % 100)
    }
}

impl fmt::Debug for Mtce {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} Mtce")
    }
}

impl FromStr for Mtce {
    type Err = rust_decimal::Error;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let value = Decimal::from_str(s.trim())?;
        Mtce::from_decimal(value).map_err(|_| rust_decimal::Error::ExceedsMaximumPossibleValue)
    }
}

/// A deduction or inclusion coefficient in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(Decimal);

impl Fraction {
    pub const ZERO: Fraction = Fraction(Decimal::ZERO);
    pub const ONE: Fraction = Fraction(Decimal::ONE);

    pub fn new(value: Decimal) -> Result<Self> {
        if value < Decimal::ZERO || value > Decimal::ONE {
            return Err(Error::FractionOutOfRange(value.to_string()));
        }
        Ok(Fraction(value.normalize()))
    }

    /// Builds a fraction from parts per million.
    pub fn from_ppm(ppm: u32) -> Result<Self> {
        Fraction::new(Decimal::new(i64::from(ppm), 6))
    }

    pub fn value(self) -> Decimal {
        self.0
    }

    /// Exact (unrounded) product with a quantity.
    pub fn of(self, quantity: Mtce) -> Decimal {
        self.0 * quantity.to_decimal()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value = Decimal::from_str(s.trim())
            .map_err(|e| Error::InvalidPolicy(format!("'{s}' is not a decimal fraction: {e}")))?;
        Fraction::new(value)
    }
}
