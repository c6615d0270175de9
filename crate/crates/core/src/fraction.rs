//! Reduced fractions in the unit interval.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `0 <= num <= den`.
///
/// Zero is always stored as `0/1`. Ordering compares exact values through a
/// 128-bit cross product, so any two fractions with 64-bit parts compare
/// correctly.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    /// Reduces `num/den` to lowest terms.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        if num > den {
            return Err(Error::OutOfUnitInterval { num, den });
        }
        let g = num.gcd(&den);
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    /// Builds a fraction the caller already knows is reduced and in `[0, 1]`.
    pub(crate) const fn new_unchecked(num: u64, den: u64) -> Self {
        Fraction { num, den }
    }

    #[inline]
    pub const fn num(self) -> u64 {
        self.num
    }

    #[inline]
    pub const fn den(self) -> u64 {
        self.den
    }

    pub const fn is_zero(self) -> bool {
        self.num == 0
    }

    pub const fn is_one(self) -> bool {
        self.num == self.den
    }

    pub const fn has_odd_den(self) -> bool {
        self.den & 1 == 1
    }

    /// The reflection `x -> 1 - x`, which keeps the denominator.
    pub const fn complement(self) -> Self {
        Fraction {
            num: self.den - self.num,
            den: self.den,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"p/q"`, a bare integer, or a decimal such as `"0.75"`.
///
/// Decimals are read exactly: `d.ddd` becomes `dddd / 10^3` before reduction.
impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let input = s.trim();
        let fail = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if input.is_empty() {
            return Err(fail("empty string"));
        }
        let digits = |part: &str| -> Result<u64> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail("expected non-negative decimal digits"));
            }
            part.parse::<u64>().map_err(|_| fail("value too large"))
        };

        let (num, den) = if let Some((p, q)) = input.split_once('/') {
            (digits(p.trim())?, digits(q.trim())?)
        } else if let Some((int, frac)) = input.split_once('.') {
            let int = if int.is_empty() { 0 } else { digits(int)? };
            let frac_digits = frac.len() as u32;
            let scale = 10u64
                .checked_pow(frac_digits)
                .ok_or_else(|| fail("too many decimal places"))?;
            let frac = if frac.is_empty() { 0 } else { digits(frac)? };
            let num = int
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(|| fail("value too large"))?;
            (num, scale)
        } else {
            (digits(input)?, 1)
        };

        match Fraction::new(num, den) {
            Err(Error::ZeroDenominator) => Err(fail("zero denominator")),
            Err(Error::OutOfUnitInterval { .. }) => Err(fail("outside [0, 1]")),
            other => other,
        }
    }
}
