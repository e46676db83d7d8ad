use num_rational::BigRational;

use crate::exact::{factorial, is_triangle, Algebra, ExactValue, Spin};
use crate::{Error, Result};

/// Squared triangle coefficient `delta(a b c)^2`, an exact positive rational:
/// `(a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!`.
///
/// Used to keep sum-rule residuals rational: every surd in a regrouped
/// summand pairs up into one of these squares.
pub fn tri_delta_sq(a: Spin, b: Spin, c: Spin) -> Result<BigRational> {
    if !is_triangle(a, b, c, Algebra::Su2) {
        return Err(Error::TriangleViolation(a, b, c));
    }
    let (ta, tb, tc) = (a.twice_i(), b.twice_i(), c.twice_i());
    let num = factorial((ta + tb - tc) / 2) * factorial((ta - tb + tc) / 2)
        * factorial((-ta + tb + tc) / 2);
    let den = factorial((ta + tb + tc) / 2 + 1);
    Ok(BigRational::new(num, den))
}

/// Triangle coefficient `nabla(a b c)`, the inverse of the Edmonds triangle:
/// `sqrt((a+b+c+1)! / ((a+b-c)! (a-b+c)! (-a+b+c)!))`.
pub fn nabla(a: Spin, b: Spin, c: Spin) -> Result<ExactValue> {
    Ok(ExactValue::sqrt_rational(tri_delta_sq(a, b, c)?.recip()))
}

/// Edmonds triangle coefficient `delta(a b c) = 1/nabla(a b c)`.
pub fn delta(a: Spin, b: Spin, c: Spin) -> Result<ExactValue> {
    Ok(ExactValue::sqrt_rational(tri_delta_sq(a, b, c)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::big;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn nabla_examples() {
        assert_eq!(nabla(s(0), s(0), s(0)).unwrap(), ExactValue::one());
        // nabla(1/2 1/2 0) = sqrt(2)
        assert_eq!(
            nabla(s(1), s(1), s(0)).unwrap(),
            ExactValue::sqrt_rational(big(2))
        );
        // nabla(1 1 1) = sqrt(24) = 2 sqrt(6)
        assert_eq!(
            nabla(s(2), s(2), s(2)).unwrap(),
            ExactValue::new(big(2), big(6))
        );
    }

    #[test]
    fn nabla_times_delta_is_one() {
        for ta in 0..=10u32 {
            for tb in 0..=10u32 {
                for tc in 0..=10u32 {
                    let (a, b, c) = (s(ta), s(tb), s(tc));
                    if !crate::exact::is_triangle(a, b, c, Algebra::Su2) {
                        assert!(nabla(a, b, c).is_err());
                        continue;
                    }
                    let product = nabla(a, b, c).unwrap().mul(&delta(a, b, c).unwrap());
                    assert_eq!(product, ExactValue::one());
                }
            }
        }
    }
}
