use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{factorial, is_triangle, Algebra, ExactValue, Spin};

/// Clebsch-Gordan coefficient `<j1 m1 j2 m2 | j m>` as an exact surd, from
/// the standard single-sum formula. Projections are passed as doubled values
/// and may be negative. Returns zero outside the coupling domain.
pub fn cg(j1: Spin, m1: i64, j2: Spin, m2: i64, j: Spin, m: i64) -> ExactValue {
    let (tj1, tj2, tj) = (j1.twice_i(), j2.twice_i(), j.twice_i());
    if m1 + m2 != m
        || m1.abs() > tj1
        || m2.abs() > tj2
        || m.abs() > tj
        || (tj1 + m1) % 2 != 0
        || (tj2 + m2) % 2 != 0
        || (tj + m) % 2 != 0
        || !is_triangle(j1, j2, j, Algebra::Su2)
    {
        return ExactValue::zero();
    }

    // All in doubled units; every combination below is even, so halving is
    // exact.
    let h = |x: i64| {
        debug_assert!(x % 2 == 0 && x >= 0, "odd or negative factorial arg {x}");
        x / 2
    };

    let prefactor_num = BigInt::from(tj + 1)
        * factorial(h(tj1 + m1))
        * factorial(h(tj1 - m1))
        * factorial(h(tj2 + m2))
        * factorial(h(tj2 - m2))
        * factorial(h(tj + m))
        * factorial(h(tj - m))
        * factorial(h(tj1 + tj2 - tj))
        * factorial(h(tj1 - tj2 + tj))
        * factorial(h(-tj1 + tj2 + tj));
    let prefactor_den = factorial(h(tj1 + tj2 + tj) + 1);
    let prefactor = BigRational::new(prefactor_num, prefactor_den);

    let mut sum = BigRational::zero();
    // z runs over all values keeping every factorial argument non-negative.
    let z_min = 0i64.max(h(tj2 - tj - m1)).max(h(tj1 + m2 - tj));
    let z_max = h(tj1 + tj2 - tj).min(h(tj1 - m1)).min(h(tj2 + m2));
    for z in z_min..=z_max {
        let den = factorial(z)
            * factorial(h(tj1 + tj2 - tj) - z)
            * factorial(h(tj1 - m1) - z)
            * factorial(h(tj2 + m2) - z)
            * factorial(h(tj - tj2 + m1) + z)
            * factorial(h(tj - tj1 - m2) + z);
        let sign = if z % 2 == 0 { 1 } else { -1 };
        sum += BigRational::new(BigInt::from(sign), den);
    }

    ExactValue::sqrt_rational(prefactor).mul_rational(&sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, ratio};

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn half_half_coupling() {
        // <1/2 1/2 1/2 -1/2 | 0 0> = 1/sqrt(2), <.. | 1 0> = 1/sqrt(2)
        let singlet = cg(s(1), 1, s(1), -1, s(0), 0);
        assert_eq!(singlet, ExactValue::new(ratio(1, 2), big(2)));
        let triplet = cg(s(1), 1, s(1), -1, s(2), 0);
        assert_eq!(triplet, ExactValue::new(ratio(1, 2), big(2)));
        let other = cg(s(1), -1, s(1), 1, s(0), 0);
        assert_eq!(other, ExactValue::new(ratio(-1, 2), big(2)));
    }

    #[test]
    fn stretched_is_one() {
        for tj1 in 0..=4u32 {
            for tj2 in 0..=4u32 {
                let v = cg(
                    s(tj1),
                    tj1 as i64,
                    s(tj2),
                    tj2 as i64,
                    s(tj1 + tj2),
                    (tj1 + tj2) as i64,
                );
                assert_eq!(v, ExactValue::one());
            }
        }
    }

    #[test]
    fn orthogonality_in_j() {
        // sum_{m1 m2, m1+m2 = m} <j1 m1 j2 m2|j m><j1 m1 j2 m2|j' m> = delta_{jj'}
        use crate::exact::SurdSum;
        let (j1, j2) = (s(2), s(3));
        for tj in (1..=5u32).step_by(2) {
            for tjp in (1..=5u32).step_by(2) {
                let (j, jp) = (s(tj), s(tjp));
                let m = 1i64;
                let mut acc = SurdSum::zero();
                for m1 in (-j1.twice_i()..=j1.twice_i()).step_by(2) {
                    let m2 = m - m1;
                    let a = cg(j1, m1, j2, m2, j, m);
                    let b = cg(j1, m1, j2, m2, jp, m);
                    acc.add_value(&a.mul(&b));
                }
                let expected = if tj == tjp {
                    ExactValue::one()
                } else {
                    ExactValue::zero()
                };
                assert_eq!(acc.collapse(), Some(expected), "2j={tj} 2j'={tjp}");
            }
        }
    }
}
