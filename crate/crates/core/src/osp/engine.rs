use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::One;
use once_cell::sync::Lazy;

use crate::exact::{falling_product, Spin};
use crate::{Error, Result};

use super::gamma::alpha_norm_twice;
use super::poly::BiHomPoly;

/// Memo table for the polynomial engine, keyed on doubled values
/// `(2 omega, 2 lambda, 2 kappa)`. Values are immutable after insertion.
static P_CACHE: Lazy<DashMap<(u32, u32, u32), BiHomPoly>> = Lazy::new(DashMap::new);

fn inv_falling(top: i64, len: i64) -> BigRational {
    BigRational::new(num_bigint::BigInt::one(), falling_product(top, len))
}

/// Applies the rank-lowering linear form at doubled spin `t`:
/// multiply by `t u - (tau_t / t) v`.
fn mul_gamma_twice(poly: &BiHomPoly, t: i64) -> BiHomPoly {
    poly.mul_linear(
        &BigRational::from_integer(t.into()),
        &BigRational::new((-t.rem_euclid(2)).into(), t.into()),
    )
}

/// Closure polynomial `P^omega(lambda, kappa)` computed by the two
/// parity-dependent iterable recursions, with the iteration running down the
/// first argument. Defined for any argument pair with
/// `2 kappa >= ceil(2 omega / 2)`; the base case is `P^0 = 1` and empty
/// iteration ranges yield the zero polynomial.
pub(crate) fn poly_p_raw(w: u32, tl: i64, tk: i64) -> BiHomPoly {
    debug_assert!(tl >= 0 && tk >= 0);
    if w == 0 {
        return BiHomPoly::one();
    }
    let key = (w, tl as u32, tk as u32);
    if let Some(hit) = P_CACHE.get(&key) {
        return hit.clone();
    }

    let degree = w / 2;
    let parity = (w % 2) as u8;
    let mut acc = BiHomPoly::zero(degree, parity);
    if tk == 0 {
        // Coupling against the identity only survives at order zero.
        return acc;
    }

    if w % 2 == 0 {
        // Integral order p: two plain sums, the second carrying the
        // rank-lowering form and the overall (2l + 2k - p) weight.
        let p = (w / 2) as i64;
        debug_assert!(tk >= p, "second argument below integral order");
        let outer = BigRational::from_integer((tl + tk - p).into());
        for n in 0..=(tl - p) {
            let sub_l = tl - n - 1;
            let ratio = inv_falling(tk + n, p);
            let lowered = poly_p_raw(w - 1, sub_l, tk + n);
            acc.add_scaled(&lowered.mul_d0(&alpha_norm_twice(tk + n)), &ratio);
            let dropped = poly_p_raw(w - 2, sub_l, tk + n - 1);
            acc.add_scaled(&mul_gamma_twice(&dropped, tk + n), &(&ratio * &outer));
        }
        let prefactor = BigRational::from_integer(falling_product(tk, p));
        acc = acc.scale(&prefactor);
    } else {
        // Half-integral order p + 1/2: alternating sums, both weighted by
        // (2l + 2k - p).
        let p = ((w - 1) / 2) as i64;
        debug_assert!(tk >= p + 1, "second argument below half-integral order");
        let outer = BigRational::from_integer((tl + tk - p).into());
        for n in 0..=(tl - p - 1) {
            let sub_l = tl - n - 1;
            let sign = if n % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            let ratio_a = inv_falling(tk + n, p);
            let raised = poly_p_raw(w - 1, sub_l, tk + n);
            acc.add_scaled(
                &raised.mul_d0(&alpha_norm_twice(tk + n)),
                &(&sign * &ratio_a * &outer),
            );
            if w >= 2 {
                let ratio_b = inv_falling(tk + n, p + 1);
                let dropped = poly_p_raw(w - 2, sub_l, tk + n - 1);
                acc.add_scaled(
                    &mul_gamma_twice(&dropped, tk + n),
                    &(-&sign * &ratio_b * &outer),
                );
            }
        }
        let prefactor = BigRational::from_integer(falling_product(tk, p + 1));
        acc = acc.scale(&prefactor);
    }

    P_CACHE.insert(key, acc.clone());
    acc
}

/// Closure polynomial `P^omega(lambda, kappa)` for an admissible set of
/// arguments (`0 <= omega <= inf(lambda, kappa)`). Symmetric in the spin
/// pair; the recursion runs with the smaller spin first.
pub fn poly_p(omega: Spin, lambda: Spin, kappa: Spin) -> Result<BiHomPoly> {
    let lo = lambda.min(kappa);
    let hi = lambda.max(kappa);
    if omega > lo {
        return Err(Error::OutOfRange(format!(
            "pseudo-degree {omega} exceeds inf({lambda}, {kappa})"
        )));
    }
    Ok(poly_p_raw(omega.twice(), lo.twice_i(), hi.twice_i()))
}

/// Same polynomial but iterating the recursion on the first argument as
/// given, without normalizing the pair order. Exists so the spin-exchange
/// symmetry can be verified as a real property of the recursions.
pub fn poly_p_ordered(omega: Spin, first: Spin, second: Spin) -> Result<BiHomPoly> {
    if omega > first.min(second) {
        return Err(Error::OutOfRange(format!(
            "pseudo-degree {omega} exceeds inf({first}, {second})"
        )));
    }
    Ok(poly_p_raw(omega.twice(), first.twice_i(), second.twice_i()))
}
