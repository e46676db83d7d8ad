//! Exact arithmetic substrate: spins as twice-value integers, tau-parity,
//! phase bookkeeping, big-integer factorials, and quadratic surds.

mod decimal;
mod factorial;
mod spin;
mod value;

pub use decimal::Decimal;
pub use factorial::{binomial, double_factorial, factorial, falling_product, ratio_of_factorials};
pub use spin::{is_triangle, Algebra, ParityCase, Spin};
pub(crate) use spin::{int_part_of_twice, tau_of_twice};
pub use value::{ExactValue, SurdSum};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an integer-valued big rational.
pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the big rational `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^n` for a signed integer exponent.
pub fn parity_sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
