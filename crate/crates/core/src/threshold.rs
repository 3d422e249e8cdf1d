//! Exact rational thresholds and count comparisons.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::Error;

/// Exact rational used for thresholds, CPT values and minimum supports.
pub type Rational = Ratio<i128>;

/// A relative frequency in `[0, 1]`, always held in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Threshold(Rational);

impl Threshold {
    pub fn new(numerator: i128, denominator: i128) -> Result<Self, Error> {
        if denominator == 0 {
            return Err(Error::InvalidThreshold(format!(
                "{numerator}/{denominator}"
            )));
        }
        Self::from_ratio(Rational::new(numerator, denominator))
    }

    pub fn from_ratio(ratio: Rational) -> Result<Self, Error> {
        if ratio < Rational::zero() || ratio > Rational::one() {
            return Err(Error::InvalidThreshold(ratio.to_string()));
        }
        Ok(Threshold(ratio))
    }

    /// `percent / 100`.
    pub fn percent(percent: i128) -> Result<Self, Error> {
        Self::new(percent, 100)
    }

    pub fn zero() -> Self {
        Threshold(Rational::zero())
    }

    pub fn one() -> Self {
        Threshold(Rational::one())
    }

    pub fn ratio(&self) -> Rational {
        self.0
    }

    pub fn numerator(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i128 {
        *self.0.denom()
    }

    /// `self × total` as an exact rational.
    pub fn of(&self, total: u64) -> Rational {
        self.0 * Rational::from_integer(total as i128)
    }

    /// Smallest positive count that meets this threshold over `total` transactions.
    ///
    /// Frequent itemsets must occur at least once, so this is never below 1.
    pub fn min_count(&self, total: u64) -> u64 {
        let bound = self.of(total).ceil().to_integer();
        bound.max(1) as u64
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

/// Accepts `"30%"`, `"0.30"`, `"3/10"` and plain integers `"0"` / `"1"`.
impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ratio = parse_rational(s).ok_or_else(|| Error::InvalidThreshold(s.to_owned()))?;
        Threshold::from_ratio(ratio)
    }
}

/// Parses a non-negative rational written as a percentage, decimal or fraction.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some(pct) = s.strip_suffix('%') {
        return parse_decimal(pct.trim()).map(|r| r / Rational::from_integer(100));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i128 = parse_digits(num.trim())?;
        let den: i128 = parse_digits(den.trim())?;
        if den == 0 {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_digits(s: &str) -> Option<i128> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `"12.345"` becomes `12345/10^3` exactly.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let int_val = if int.is_empty() {
        0
    } else {
        parse_digits(int)?
    };
    if frac.is_empty() {
        return Some(Rational::from_integer(int_val));
    }
    let frac_val = parse_digits(frac)?;
    let scale = 10i128.checked_pow(u32::try_from(frac.len()).ok()?)?;
    Some(Rational::new(int_val.checked_mul(scale)? + frac_val, scale))
}

/// True iff `count ≥ thr × total`, compared by cross-multiplication.
pub fn meets_threshold(count: u64, thr: Threshold, total: u64) -> bool {
    (count as i128) * thr.denominator() >= thr.numerator() * (total as i128)
}

/// Membership test used by the miners: meets the threshold and occurs at all.
pub fn is_frequent(count: u64, thr: Threshold, total: u64) -> bool {
    count > 0 && meets_threshold(count, thr, total)
}
