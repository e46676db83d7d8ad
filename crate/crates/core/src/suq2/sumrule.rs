use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{big, is_triangle, parity_sign, Algebra, Spin};
use crate::Result;

use super::omega::omega_rec;
use super::qsixj::{q_racah_sum, q_tri_delta_sq};
use super::QContext;

/// Exact residual of the q-triangle sum rule for `(a,b,c,d,e)` at the
/// context's rational q:
///
/// `w(a,b;c) w(c,d;e) nabla_q(abc) nabla_q(cde)
///    = (-1)^(a+b+d+e) [2c+1] sum_f w(b,d;f) w(a,f;e)
///      nabla_q(bdf) nabla_q(afe) {a b c; d e f}_q`
///
/// with `w(x,y;z) = omega_{x+y-z}^{x,y}`. As in the classical case, both
/// sides are multiplied by `delta_q(abc) delta_q(cde)`, which renders every
/// summand rational in q. Returns exact `LHS - RHS`.
pub fn check_q_sum_rule(
    a: Spin,
    b: Spin,
    c: Spin,
    d: Spin,
    e: Spin,
    ctx: &QContext,
) -> Result<BigRational> {
    let omega = |x: Spin, y: Spin, z: Spin| -> Result<BigRational> {
        omega_rec((x.twice_i() + y.twice_i() - z.twice_i()) / 2, x, y, ctx)
    };

    let lhs = omega(a, b, c)? * omega(c, d, e)?;

    let dsq_abc = q_tri_delta_sq(a, b, c, ctx);
    let dsq_cde = q_tri_delta_sq(c, d, e, ctx);
    let phase = parity_sign((a.twice_i() + b.twice_i() + d.twice_i() + e.twice_i()) / 2);
    let weight = ctx.qnum(c.twice_i() + 1);

    let f_min = (b.twice_i() - d.twice_i()).abs().max((a.twice_i() - e.twice_i()).abs());
    let f_max = (b.twice_i() + d.twice_i()).min(a.twice_i() + e.twice_i());
    let mut rhs = BigRational::zero();
    let mut tf = f_min;
    while tf <= f_max {
        let f = Spin::from_twice(tf as u32);
        if is_triangle(b, d, f, Algebra::Su2) && is_triangle(a, f, e, Algebra::Su2) {
            rhs += omega(b, d, f)?
                * omega(a, f, e)?
                * &dsq_abc
                * &dsq_cde
                * q_racah_sum(a, b, c, d, e, f, ctx);
        }
        tf += 1;
    }
    Ok(lhs - big(phase) * weight * rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn small_cases_at_q2() {
        let ctx = QContext::new(ratio(2, 1)).unwrap();
        assert!(check_q_sum_rule(s(1), s(1), s(0), s(1), s(1), &ctx)
            .unwrap()
            .is_zero());
        assert!(check_q_sum_rule(s(2), s(2), s(2), s(2), s(2), &ctx)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn unit_spins_at_q_three_halves() {
        let ctx = QContext::new(ratio(3, 2)).unwrap();
        assert!(check_q_sum_rule(s(2), s(2), s(2), s(2), s(2), &ctx)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn classical_branch_reduces_to_su2_rule() {
        let ctx = QContext::classical();
        for tuple in [[1u32, 1, 2, 2, 1], [2, 3, 3, 2, 3], [3, 1, 2, 2, 2]] {
            let [ta, tb, tc, td, te] = tuple;
            if !is_triangle(s(ta), s(tb), s(tc), Algebra::Su2)
                || !is_triangle(s(tc), s(td), s(te), Algebra::Su2)
            {
                continue;
            }
            assert!(check_q_sum_rule(s(ta), s(tb), s(tc), s(td), s(te), &ctx)
                .unwrap()
                .is_zero());
        }
    }
}
