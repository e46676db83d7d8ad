use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::One;
use once_cell::sync::Lazy;

use crate::exact::{ratio, Spin};
use crate::{Error, Result};

use super::poly::BiHomPoly;

/// Memo table for the low-rank polynomial engine, keyed on
/// `(2 omega, 2 lambda, 2 kappa)`.
static Q_CACHE: Lazy<DashMap<(u32, u32, u32), BiHomPoly>> = Lazy::new(DashMap::new);

fn mul_gamma_twice(poly: &BiHomPoly, t: i64) -> BiHomPoly {
    poly.mul_linear(
        &BigRational::from_integer(t.into()),
        &BigRational::new((-t.rem_euclid(2)).into(), t.into()),
    )
}

/// Low-rank closure polynomial `Q^omega(lambda; kappa)` (first argument is
/// the smaller spin; the pair is NOT symmetric), from its primary recursions
/// with base `Q^0 = 1`.
///
/// The recursions carry no explicit termination statement; the rule adopted
/// here mirrors the high-rank engine: a sub-term whose implied tensor
/// product violates the triangle rule (rank above the spin sum, which also
/// covers coupling against the identity at positive order) contributes the
/// zero polynomial. The rule is cross-validated by the functional-relation
/// scan against the high-rank polynomials.
pub fn poly_q(omega: Spin, lambda: Spin, kappa: Spin) -> Result<BiHomPoly> {
    if lambda > kappa {
        return Err(Error::OutOfRange(format!(
            "low-rank polynomial needs lambda <= kappa, got ({lambda}; {kappa})"
        )));
    }
    if lambda.twice() == 0 || omega.twice_i() > lambda.twice_i() - 1 {
        return Err(Error::OutOfRange(format!(
            "order {omega} outside [0, {lambda} - 1/2]"
        )));
    }
    Ok(poly_q_raw(
        omega.twice(),
        lambda.twice_i(),
        kappa.twice_i(),
    ))
}

pub(crate) fn poly_q_raw(w: u32, tl: i64, tk: i64) -> BiHomPoly {
    debug_assert!(tl >= 0 && tk >= tl);
    // Implied rank of the underlying product.
    let rank = tk - tl + w as i64;
    if rank > tl + tk {
        return BiHomPoly::zero(w / 2, (w % 2) as u8);
    }
    if w == 0 {
        return BiHomPoly::one();
    }
    let key = (w, tl as u32, tk as u32);
    if let Some(hit) = Q_CACHE.get(&key) {
        return hit.clone();
    }

    debug_assert!(tk >= 1 && tl >= 1);
    let degree = w / 2;
    let parity = (w % 2) as u8;
    let sign_2l = if tl % 2 == 0 { 1i64 } else { -1 };
    let alpha_like = ratio(tk + tk.rem_euclid(2), tk + 1);

    let mut acc = BiHomPoly::zero(degree, parity);
    if w % 2 == 0 {
        // Integral order p.
        let p = (w / 2) as i64;
        acc.add_scaled(&poly_q_raw(w, tl - 1, tk - 1), &ratio(tk + p, 1));
        acc.add_scaled(
            &poly_q_raw(w - 1, tl - 1, tk).mul_d0(&BigRational::one()),
            &(&alpha_like * ratio(sign_2l, 1)),
        );
        let dropped = poly_q_raw(w - 2, tl - 1, tk + 1);
        acc.add_scaled(
            &mul_gamma_twice(&dropped, tk + 1),
            &ratio(tk * (tk - tl + p + 1), 1),
        );
    } else {
        // Half-integral order p + 1/2; the combination 2k + pi + 1/2 is
        // k2 + p + 1 in doubled units.
        let p = ((w - 1) / 2) as i64;
        let lift = tk + p + 1;
        let gap = tk - tl + p + 1;
        acc.add_scaled(&poly_q_raw(w, tl - 1, tk - 1), &ratio(lift, 1));
        if w >= 1 {
            acc.add_scaled(
                &poly_q_raw(w - 1, tl - 1, tk).mul_d0(&BigRational::one()),
                &(&alpha_like * ratio(-sign_2l * lift * gap, 1)),
            );
        }
        if w >= 2 {
            let dropped = poly_q_raw(w - 2, tl - 1, tk + 1);
            acc.add_scaled(&mul_gamma_twice(&dropped, tk + 1), &ratio(tk * gap, 1));
        }
    }
    let value = acc.scale(&ratio(1, tk));
    Q_CACHE.insert(key, value.clone());
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn base_case() {
        assert!(poly_q(s(0), s(1), s(5)).unwrap().eq_as_poly(&BiHomPoly::one()));
    }

    #[test]
    fn half_order_small() {
        // Q^(1/2)(1; 1) = 2 d0 (matches the high-rank polynomial at the
        // shifted second argument).
        let q = poly_q_raw(1, 2, 2);
        assert_eq!(q.to_string(), "2*d0");
    }

    #[test]
    fn zero_tensor_instance() {
        // Q^(1/2)(1; 5/2) = 0: integral smaller spin against half-integral
        // larger spin at the lowest half-excess rank.
        assert!(poly_q(s(1), s(2), s(5)).unwrap().is_zero());
    }

    #[test]
    fn functional_relation_small() {
        // Q^w(l; k) = P^w(l, k - l + w) on a small set.
        for tl in 1..=5i64 {
            for tk in tl..=6i64 {
                for w in 0..tl.min(6) {
                    let q = poly_q_raw(w as u32, tl, tk);
                    let p = super::super::engine::poly_p_raw(w as u32, tl, tk - tl + w);
                    assert!(q.eq_as_poly(&p), "w={w} tl={tl} tk={tk}: {q} vs {p}");
                }
            }
        }
    }
}
