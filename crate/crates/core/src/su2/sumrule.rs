use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{big, is_triangle, parity_sign, Algebra, Spin};
use crate::Result;

use super::sixj::racah_sum;
use super::triangle::tri_delta_sq;

/// Exact residual of the su(2) triangle sum rule for `(a,b,c,d,e)`:
///
/// `nabla(abc) nabla(cde) = (-1)^(a+b+d+e) (2c+1) sum_f nabla(bdf) nabla(afe) {a b c; d e f}`
///
/// Both sides are multiplied through by `delta(abc) delta(cde)`, which makes
/// every summand rational: the nabla factors cancel against triangle
/// coefficients inside the 6-j, leaving `delta(abc)^2 delta(cde)^2` times the
/// rational 6-j kernel. Returns the exact rational `LHS - RHS`, so zero means
/// the rule holds.
pub fn check_sum_rule_su2(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin) -> Result<BigRational> {
    let dsq_abc = tri_delta_sq(a, b, c)?;
    let dsq_cde = tri_delta_sq(c, d, e)?;

    let phase = parity_sign((a.twice_i() + b.twice_i() + d.twice_i() + e.twice_i()) / 2);
    let weight = big(c.twice_i() + 1);

    let f_min = (b.twice_i() - d.twice_i()).abs().max((a.twice_i() - e.twice_i()).abs());
    let f_max = (b.twice_i() + d.twice_i()).min(a.twice_i() + e.twice_i());
    let mut rhs = BigRational::zero();
    let mut tf = f_min;
    while tf <= f_max {
        let f = Spin::from_twice(tf as u32);
        if is_triangle(b, d, f, Algebra::Su2) && is_triangle(a, f, e, Algebra::Su2) {
            // nabla(bdf) nabla(afe) {a b c; d e f} delta(abc) delta(cde)
            //   = delta(abc)^2 delta(cde)^2 * racah_sum(a,b,c,d,e,f)
            rhs += &dsq_abc * &dsq_cde * racah_sum(a, b, c, d, e, f);
        }
        tf += 1;
    }
    Ok(BigRational::one() - big(phase) * weight * rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn forced_small_case() {
        assert!(check_sum_rule_su2(s(1), s(1), s(0), s(1), s(1))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn unit_spin_case() {
        assert!(check_sum_rule_su2(s(2), s(2), s(2), s(2), s(2))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn mixed_half_integral_case() {
        assert!(
            check_sum_rule_su2(s(3), s(2), s(3), s(4), s(3))
                .unwrap()
                .is_zero()
        );
    }
}
