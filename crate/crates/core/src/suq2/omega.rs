use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::Spin;
use crate::{Error, Result};

use super::QContext;

/// Closure coefficient `omega_p` for `[S^lambda x S^kappa]^(lambda+kappa-p)`,
/// computed by the q-binomial-weighted recursion
///
/// `[2L choose p] w_p(L,K) = Phi(2K) [2L-1 choose p-1] w_{p-1}(L-1/2,K-1/2)
///                         + [2L-1 choose p] w_p(L-1/2,K+1/2)`
///
/// with `w_0 = 1`. This is the reference path; the closed form
/// [`omega_closed`] is checked against it. Takes `lambda = inf` internally
/// (omega is symmetric in its spin pair).
pub fn omega_rec(p: i64, lambda: Spin, kappa: Spin, ctx: &QContext) -> Result<BigRational> {
    let (lo, hi) = (lambda.min(kappa), lambda.max(kappa));
    if p < 0 || p > lo.twice_i() {
        return Err(Error::OutOfRange(format!(
            "omega order p={p} outside [0, {}]",
            lo.twice_i()
        )));
    }
    if ctx.is_classical() {
        return Ok(BigRational::one());
    }
    Ok(omega_rec_inner(p, lo.twice_i(), hi.twice_i(), ctx))
}

fn omega_rec_inner(p: i64, tl: i64, tk: i64, ctx: &QContext) -> BigRational {
    if p == 0 {
        return BigRational::one();
    }
    debug_assert!(p <= tl);
    let key = (p, tl as u32, tk as u32);
    if let Some(hit) = ctx.omega_cache().get(&key) {
        return hit.clone();
    }
    let mut acc = ctx.phi(tk).expect("tk >= p >= 1")
        * ctx.qbinom(tl - 1, p - 1)
        * omega_rec_inner(p - 1, tl - 1, tk - 1, ctx);
    if p <= tl - 1 {
        acc += ctx.qbinom(tl - 1, p) * omega_rec_inner(p, tl - 1, tk + 1, ctx);
    }
    let value = acc / ctx.qbinom(tl, p);
    ctx.omega_cache().insert(key, value.clone());
    value
}

/// The closed form of `omega_p`: a `p`-fold nested sum of `Phi` values over
/// non-decreasing indices, divided by the q-binomial `[2 lambda choose p]`.
/// Valid for `1 <= p <= 2 lambda` with `lambda = inf`; the index convention
/// starts the outermost sum at zero.
pub fn omega_closed(p: i64, lambda: Spin, kappa: Spin, ctx: &QContext) -> Result<BigRational> {
    let (lo, hi) = (lambda.min(kappa), lambda.max(kappa));
    let (tl, tk) = (lo.twice_i(), hi.twice_i());
    if p < 1 || p > tl {
        return Err(Error::OutOfRange(format!(
            "omega order p={p} outside [1, {tl}]"
        )));
    }
    if ctx.is_classical() {
        return Ok(BigRational::one());
    }
    let upper = tl - p;
    let nested = nested_phi_sum(ctx, p, tk, 0, 0, upper)?;
    Ok(nested / ctx.qbinom(tl, p))
}

fn nested_phi_sum(
    ctx: &QContext,
    depth: i64,
    tk: i64,
    level: i64,
    lower: i64,
    upper: i64,
) -> Result<BigRational> {
    if level == depth {
        return Ok(BigRational::one());
    }
    let mut acc = BigRational::zero();
    for m in lower..=upper {
        let phi = ctx.phi(tk + m - level)?;
        acc += phi * nested_phi_sum(ctx, depth, tk, level + 1, m, upper)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    fn ctx(n: i64, d: i64) -> QContext {
        QContext::new(ratio(n, d)).unwrap()
    }

    #[test]
    fn base_and_classical() {
        let c = ctx(2, 1);
        assert_eq!(omega_rec(0, s(3), s(5), &c).unwrap(), BigRational::one());
        let classical = QContext::classical();
        for p in 0..=4 {
            assert_eq!(
                omega_rec(p, s(4), s(6), &classical).unwrap(),
                BigRational::one()
            );
        }
    }

    #[test]
    fn top_order_is_phi_factorial_ratio() {
        // w_{2L}(L,K) = Phi(2K)! / Phi(2K-2L)!
        for c in [ctx(2, 1), ctx(3, 2)] {
            for tl in 1..=4i64 {
                for tk in tl..=6i64 {
                    let w = omega_rec(tl, s(tl as u32), s(tk as u32), &c).unwrap();
                    let expected = c.phi_fact(tk).unwrap() / c.phi_fact(tk - tl).unwrap();
                    assert_eq!(w, expected, "2l={tl} 2k={tk}");
                }
            }
        }
    }

    #[test]
    fn closed_form_p1() {
        // [2L] w_1 = sum_{m=0}^{2L-1} Phi(2K + m)
        let c = ctx(2, 1);
        for tl in 1..=5i64 {
            for tk in tl..=7i64 {
                let w = omega_closed(1, s(tl as u32), s(tk as u32), &c).unwrap();
                let mut acc = BigRational::zero();
                for m in 0..tl {
                    acc += c.phi(tk + m).unwrap();
                }
                assert_eq!(w, acc / c.qnum(tl), "2l={tl} 2k={tk}");
            }
        }
    }

    #[test]
    fn single_term_case() {
        // p = 1, lambda = kappa = 1/2: single Phi(1) = 1 over [1] = 1.
        let c = ctx(2, 1);
        assert_eq!(omega_closed(1, s(1), s(1), &c).unwrap(), BigRational::one());
    }

    #[test]
    fn recursion_equals_closed_form() {
        for c in [ctx(2, 1), ctx(3, 2), ctx(5, 4)] {
            for tl in 1..=8i64 {
                for tk in tl..=12i64 {
                    for p in 1..=tl {
                        let lhs = omega_rec(p, s(tl as u32), s(tk as u32), &c).unwrap();
                        let rhs = omega_closed(p, s(tl as u32), s(tk as u32), &c).unwrap();
                        assert_eq!(lhs, rhs, "p={p} 2l={tl} 2k={tk}");
                    }
                }
            }
        }
    }
}
