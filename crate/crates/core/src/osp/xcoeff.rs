use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::exact::{falling_product, ratio, Spin};
use crate::{Error, Result};

use super::gamma::alpha_norm_twice;

/// Memo table for expansion coefficients, keyed on
/// `(m, 2 omega, 2 lambda, 2 kappa)`.
static X_CACHE: Lazy<DashMap<(u32, u32, u32, u32), BigRational>> = Lazy::new(DashMap::new);

fn inv_falling(top: i64, len: i64) -> BigRational {
    BigRational::new(num_bigint::BigInt::one(), falling_product(top, len))
}

fn tau(t: i64) -> i64 {
    t.rem_euclid(2)
}

/// Expansion coefficient `x_m^omega(lambda, kappa)` of the closure
/// polynomial over the binomial basis, computed by the dedicated boundary
/// and general coefficient recursions. This route is independent of the
/// polynomial engine and is checked against coefficient extraction from it.
pub fn x_coeff(m: i64, omega: Spin, lambda: Spin, kappa: Spin) -> Result<BigRational> {
    if m < 0 || m > omega.int_part() {
        return Err(Error::OutOfRange(format!(
            "coefficient index m={m} outside [0, {}]",
            omega.int_part()
        )));
    }
    let lo = lambda.min(kappa);
    let hi = lambda.max(kappa);
    if omega > lo {
        return Err(Error::OutOfRange(format!(
            "pseudo-degree {omega} exceeds inf({lambda}, {kappa})"
        )));
    }
    Ok(x_raw(m, omega.twice() as i64, lo.twice_i(), hi.twice_i()))
}

pub(crate) fn x_raw(m: i64, w: i64, tl: i64, tk: i64) -> BigRational {
    if w < 0 || m < 0 || m > w / 2 {
        return BigRational::zero();
    }
    if w == 0 {
        return BigRational::one();
    }
    if tk == 0 {
        return BigRational::zero();
    }
    let key = (m as u32, w as u32, tl as u32, tk as u32);
    if let Some(hit) = X_CACHE.get(&key) {
        return hit.clone();
    }

    let value = if w % 2 == 0 {
        let p = w / 2;
        if tl < p {
            BigRational::zero()
        } else if m == 0 {
            // Leading coefficient of the integral-order polynomial.
            let outer = ratio(tl + tk - p, 1);
            let mut acc = BigRational::zero();
            for n in 0..=(tl - p) {
                acc += inv_falling(tk + n - 1, p - 1) * x_raw(0, w - 2, tl - n - 1, tk + n - 1);
            }
            BigRational::from_integer(falling_product(tk, p)) * outer * acc
        } else {
            // General integral-order coefficient (also covers the trailing
            // one, where the middle term drops out of range).
            let outer = ratio(tl + tk - p, 1);
            let mut acc = BigRational::zero();
            for n in 0..=(tl - p) {
                let r1 = inv_falling(tk + n, p);
                acc += &r1
                    * alpha_norm_twice(tk + n)
                    * x_raw(m - 1, w - 1, tl - n - 1, tk + n);
                acc += &outer
                    * inv_falling(tk + n - 1, p - 1)
                    * x_raw(m, w - 2, tl - n - 1, tk + n - 1);
                acc -= &outer
                    * &r1
                    * ratio(tau(tk + n), tk + n)
                    * x_raw(m - 1, w - 2, tl - n - 1, tk + n - 1);
            }
            BigRational::from_integer(falling_product(tk, p)) * acc
        }
    } else {
        let p = (w - 1) / 2;
        if tl < p + 1 {
            BigRational::zero()
        } else if m == 0 {
            let outer = ratio(tl + tk - p, 1);
            let mut acc = BigRational::zero();
            for n in 0..=(tl - p - 1) {
                let sign = if n % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                acc += &sign
                    * inv_falling(tk + n, p)
                    * alpha_norm_twice(tk + n)
                    * x_raw(0, w - 1, tl - n - 1, tk + n);
                acc -= &sign
                    * inv_falling(tk + n - 1, p)
                    * x_raw(0, w - 2, tl - n - 1, tk + n - 1);
            }
            BigRational::from_integer(falling_product(tk, p + 1)) * outer * acc
        } else {
            let outer = ratio(tl + tk - p, 1);
            let mut acc = BigRational::zero();
            for n in 0..=(tl - p - 1) {
                let sign = if n % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                acc += &sign
                    * inv_falling(tk + n, p)
                    * alpha_norm_twice(tk + n)
                    * x_raw(m, w - 1, tl - n - 1, tk + n);
                acc -= &sign
                    * inv_falling(tk + n - 1, p)
                    * x_raw(m, w - 2, tl - n - 1, tk + n - 1);
                acc += &sign
                    * inv_falling(tk + n, p + 1)
                    * ratio(tau(tk + n), tk + n)
                    * x_raw(m - 1, w - 2, tl - n - 1, tk + n - 1);
            }
            BigRational::from_integer(falling_product(tk, p + 1)) * outer * acc
        }
    };

    X_CACHE.insert(key, value.clone());
    value
}

/// Closed form of the leading coefficient at integral order:
/// `x_0^p = (2l)! (2k)! (2l+2k-p)! / (p! (2l-p)! (2k-p)! (2l+2k-2p)!)`.
pub fn x0_closed(p: i64, lambda: Spin, kappa: Spin) -> Result<BigRational> {
    let (tl, tk) = (lambda.twice_i(), kappa.twice_i());
    if p < 0 || p > tl.min(tk) {
        return Err(Error::OutOfRange(format!(
            "order p={p} outside [0, inf(2l, 2k) = {}]",
            tl.min(tk)
        )));
    }
    use crate::exact::factorial;
    Ok(BigRational::new(
        factorial(tl) * factorial(tk) * factorial(tl + tk - p),
        factorial(p) * factorial(tl - p) * factorial(tk - p) * factorial(tl + tk - 2 * p),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::big;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn trailing_order_one() {
        // x_1^1 = -tau_l tau_k
        for tl in 2..=6u32 {
            for tk in tl..=7u32 {
                let v = x_coeff(1, s(2), s(tl), s(tk)).unwrap();
                assert_eq!(v, -big(((tl % 2) * (tk % 2)) as i64));
            }
        }
    }

    #[test]
    fn trailing_order_two_vanishes() {
        for tl in 4..=8u32 {
            for tk in tl..=9u32 {
                assert_eq!(x_coeff(2, s(4), s(tl), s(tk)).unwrap(), big(0));
            }
        }
    }

    #[test]
    fn leading_half_order_case_a() {
        // Both integral at order 3/2: -2l 2k (2l + 2k - 2)
        for tl in [4i64, 6, 8] {
            for tk in [4i64, 6, 8] {
                let v = x_raw(0, 3, tl, tk);
                assert_eq!(v, big(-tl * tk * (tl + tk - 2)), "tl={tl} tk={tk}");
            }
        }
    }

    #[test]
    fn closed_form_matches_recursion() {
        for tl in 0..=8i64 {
            for tk in tl..=8i64 {
                for p in 0..=tl.min(tk) {
                    let closed = x0_closed(p, s(tl as u32), s(tk as u32)).unwrap();
                    let rec = x_raw(0, 2 * p, tl, tk);
                    assert_eq!(closed, rec, "p={p} tl={tl} tk={tk}");
                }
            }
        }
    }

    #[test]
    fn closed_form_small_values() {
        assert_eq!(x0_closed(0, s(5), s(3)).unwrap(), big(1));
        // p = 1: 2l 2k (2l + 2k - 1)
        assert_eq!(x0_closed(1, s(4), s(6)).unwrap(), big(4 * 6 * 9));
        assert_eq!(
            x0_closed(2, s(2), s(2)).unwrap(),
            x_raw(0, 4, 2, 2)
        );
    }
}
