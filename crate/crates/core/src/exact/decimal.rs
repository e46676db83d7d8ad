use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Fixed-point decimal arithmetic at a configurable number of significant
/// fractional digits, backed by exact rationals.
///
/// Each operation rounds the exact rational result to `digits` decimal
/// places, so results carry an absolute error of a few units in the last
/// place per operation. Used only for residuals that mix unlike surds.
#[derive(Clone, PartialEq, Eq)]
pub struct Decimal {
    digits: u32,
    val: BigRational,
}

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

impl Decimal {
    pub fn zero(digits: u32) -> Self {
        Decimal {
            digits,
            val: BigRational::zero(),
        }
    }

    pub fn from_rational(val: &BigRational, digits: u32) -> Self {
        Decimal {
            digits,
            val: round_to(val, digits),
        }
    }

    /// `sqrt(r)` for non-negative rational `r`, correct to the working
    /// precision.
    pub fn sqrt_rational(r: &BigRational, digits: u32) -> Self {
        assert!(!r.is_negative(), "decimal sqrt of negative rational");
        let scale = pow10(digits);
        // sqrt(p/q) = isqrt(p * q * 10^(2d)) / (q * 10^d)
        let scaled = r.numer() * r.denom() * &scale * &scale;
        let root = scaled.sqrt();
        Decimal {
            digits,
            val: BigRational::new(root, r.denom() * &scale),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn value(&self) -> &BigRational {
        &self.val
    }

    pub fn add(&self, other: &Decimal) -> Decimal {
        Decimal {
            digits: self.digits.min(other.digits),
            val: round_to(&(&self.val + &other.val), self.digits.min(other.digits)),
        }
    }

    pub fn sub(&self, other: &Decimal) -> Decimal {
        Decimal {
            digits: self.digits.min(other.digits),
            val: round_to(&(&self.val - &other.val), self.digits.min(other.digits)),
        }
    }

    pub fn mul(&self, other: &Decimal) -> Decimal {
        Decimal {
            digits: self.digits.min(other.digits),
            val: round_to(&(&self.val * &other.val), self.digits.min(other.digits)),
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Decimal {
        Decimal {
            digits: self.digits,
            val: round_to(&(&self.val * r), self.digits),
        }
    }

    pub fn abs(&self) -> Decimal {
        Decimal {
            digits: self.digits,
            val: self.val.abs(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.val.is_zero()
    }

    /// True iff `|self| < 10^-tol_exponent`.
    pub fn within_tolerance(&self, tol_exponent: u32) -> bool {
        self.val.abs() < BigRational::new(BigInt::from(1), pow10(tol_exponent))
    }
}

fn round_to(val: &BigRational, digits: u32) -> BigRational {
    let scale = pow10(digits);
    let scaled = val * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = pow10(self.digits);
        let scaled = (&self.val * BigRational::from_integer(scale)).round().to_integer();
        let neg = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let digits = if digits.len() <= self.digits as usize {
            format!("{}{}", "0".repeat(self.digits as usize + 1 - digits.len()), digits)
        } else {
            digits
        };
        let split = digits.len() - self.digits as usize;
        write!(
            f,
            "{}{}.{}",
            if neg { "-" } else { "" },
            &digits[..split],
            &digits[split..]
        )
    }
}

impl fmt::Debug for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, ratio};

    #[test]
    fn sqrt_two_squares_back() {
        let d = Decimal::sqrt_rational(&big(2), 40);
        let sq = d.mul(&d);
        let err = (sq.value() - big(2)).abs();
        assert!(err < BigRational::new(BigInt::from(1), BigInt::from(10u32).pow(36)));
    }

    #[test]
    fn tolerance_check() {
        let d = Decimal::from_rational(&ratio(1, 10i64.pow(15)), 30);
        assert!(d.within_tolerance(10));
        assert!(!d.within_tolerance(16));
    }

    #[test]
    fn display_format() {
        let d = Decimal::from_rational(&ratio(-5, 4), 3);
        assert_eq!(d.to_string(), "-1.250");
    }
}
