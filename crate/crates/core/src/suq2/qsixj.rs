use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{is_triangle, Algebra, ExactValue, Spin};

use super::QContext;

/// Squared q-triangle coefficient `delta_q(a b c)^2`, rational in q:
/// `[a+b-c]! [a-b+c]! [-a+b+c]! / [a+b+c+1]!`. Triad assumed valid.
pub(crate) fn q_tri_delta_sq(a: Spin, b: Spin, c: Spin, ctx: &QContext) -> BigRational {
    let (ta, tb, tc) = (a.twice_i(), b.twice_i(), c.twice_i());
    ctx.qfact((ta + tb - tc) / 2) * ctx.qfact((ta - tb + tc) / 2)
        * ctx.qfact((-ta + tb + tc) / 2)
        / ctx.qfact((ta + tb + tc) / 2 + 1)
}

/// The rational single-sum kernel of the q-6-j symbol (alternating sum over
/// `t` of `[t+1]!` over a product of q-factorials); memoized per context.
pub fn q_racah_sum(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Spin, ctx: &QContext) -> BigRational {
    let key = [a.twice(), b.twice(), c.twice(), d.twice(), e.twice(), f.twice()];
    if let Some(hit) = ctx.racah_cache().get(&key) {
        return hit.clone();
    }
    let (ta, tb, tc) = (a.twice_i(), b.twice_i(), c.twice_i());
    let (td, te, tf) = (d.twice_i(), e.twice_i(), f.twice_i());
    let t1 = (ta + tb + tc) / 2;
    let t2 = (ta + te + tf) / 2;
    let t3 = (td + tb + tf) / 2;
    let t4 = (td + te + tc) / 2;
    let p1 = (ta + tb + td + te) / 2;
    let p2 = (ta + tc + td + tf) / 2;
    let p3 = (tb + tc + te + tf) / 2;
    let mut sum = BigRational::zero();
    for t in t1.max(t2).max(t3).max(t4)..=p1.min(p2).min(p3) {
        let den = ctx.qfact(t - t1)
            * ctx.qfact(t - t2)
            * ctx.qfact(t - t3)
            * ctx.qfact(t - t4)
            * ctx.qfact(p1 - t)
            * ctx.qfact(p2 - t)
            * ctx.qfact(p3 - t);
        let sign = BigRational::from_integer(BigInt::from(if t % 2 == 0 { 1 } else { -1 }));
        sum += sign * ctx.qfact(t + 1) / den;
    }
    ctx.racah_cache().insert(key, sum.clone());
    sum
}

/// Exact q-deformed 6-j symbol `{a b c; d e f}_q` at the context's rational
/// q; reduces to the classical symbol at q = 1. Non-triangular input gives
/// exact zero.
pub fn q_sixj(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Spin, ctx: &QContext) -> ExactValue {
    for [x, y, z] in crate::su2::sixj_triads(a, b, c, d, e, f) {
        if !is_triangle(x, y, z, Algebra::Su2) {
            return ExactValue::zero();
        }
    }
    let mut tri = BigRational::one();
    for [x, y, z] in crate::su2::sixj_triads(a, b, c, d, e, f) {
        tri *= q_tri_delta_sq(x, y, z, ctx);
    }
    ExactValue::sqrt_rational(tri).mul_rational(&q_racah_sum(a, b, c, d, e, f, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn classical_limit_matches_sixj() {
        let ctx = QContext::classical();
        for ta in 0..=4u32 {
            for tb in 0..=4u32 {
                for tc in 0..=4u32 {
                    for td in 0..=4u32 {
                        for te in 0..=4u32 {
                            for tfv in 0..=4u32 {
                                let q = q_sixj(s(ta), s(tb), s(tc), s(td), s(te), s(tfv), &ctx);
                                let c = crate::su2::sixj(s(ta), s(tb), s(tc), s(td), s(te), s(tfv));
                                assert_eq!(q, c, "{ta} {tb} {tc} {td} {te} {tfv}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn known_q_values() {
        let ctx = QContext::new(ratio(2, 1)).unwrap();
        assert_eq!(
            q_sixj(s(0), s(0), s(0), s(0), s(0), s(0), &ctx),
            ExactValue::one()
        );
        // {1/2 1/2 0; 1/2 1/2 1}_q = 1/[2] = 2/5 at q = 2
        assert_eq!(
            q_sixj(s(1), s(1), s(0), s(1), s(1), s(2), &ctx).as_rational(),
            Some(ratio(2, 5))
        );
    }
}
