use num_rational::BigRational;

use crate::exact::{big, ratio, Spin};
use crate::{Error, Result};

use super::poly::BiHomPoly;

/// Normalized diagonal-contraction coefficient: the rational factor
/// `(2k + tau_k) / (2k (2k+1))` multiplying `d0` in
/// `(-1)^(2k+1) alpha_k / sqrt(2k(2k+1))`. The full `alpha_k` is recovered by
/// reattaching the sign and surd.
pub fn alpha_norm(kappa: Spin) -> Result<BigRational> {
    if kappa.twice() == 0 {
        return Err(Error::SpinTooSmall(kappa));
    }
    Ok(alpha_norm_twice(kappa.twice_i()))
}

/// [`alpha_norm`] on a doubled spin value.
pub(crate) fn alpha_norm_twice(tk: i64) -> BigRational {
    debug_assert!(tk >= 1);
    ratio(tk + tk.rem_euclid(2), tk * (tk + 1))
}

/// Rank-lowering coefficient `gamma_k = 2k u - (tau_k / 2k) v` as a linear
/// form in `(u, v)`; `gamma_0 = 0`.
pub fn gamma_osp(kappa: Spin) -> BiHomPoly {
    gamma_osp_twice(kappa.twice_i())
}

pub(crate) fn gamma_osp_twice(tk: i64) -> BiHomPoly {
    if tk == 0 {
        return BiHomPoly::zero(1, 0);
    }
    BiHomPoly::linear(big(tk), ratio(-tk.rem_euclid(2), tk))
}

/// Direct ordered product `gamma_hi gamma_(hi-1/2) ... gamma_lo` as a
/// polynomial, with the empty-range convention (`lo > hi` gives 1). This is
/// the reference route the closed-form product representation is checked
/// against.
pub fn gamma_chain_direct(hi: Spin, lo: Spin) -> BiHomPoly {
    if lo > hi {
        return BiHomPoly::one();
    }
    let mut acc = BiHomPoly::one();
    let mut t = lo.twice_i();
    while t <= hi.twice_i() {
        acc = acc.mul(&gamma_osp_twice(t));
        t += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn alpha_norm_values() {
        // k = 1/2 -> 1 (alpha_1/2 = sqrt(2) d0); k = 1 -> 1/3; k = 3/2 -> 1/3.
        assert_eq!(alpha_norm(s(1)).unwrap(), big(1));
        assert_eq!(alpha_norm(s(2)).unwrap(), ratio(1, 3));
        assert_eq!(alpha_norm(s(3)).unwrap(), ratio(1, 3));
        assert!(alpha_norm(s(0)).is_err());
    }

    #[test]
    fn gamma_first_values() {
        assert!(gamma_osp(s(0)).is_zero());
        // gamma_1/2 = u - v = c0
        assert_eq!(gamma_osp(s(1)).to_string(), "u - v");
        // gamma_1 = 2u
        assert_eq!(gamma_osp(s(2)).to_string(), "2*u");
    }

    #[test]
    fn chain_convention() {
        assert!(gamma_chain_direct(s(2), s(3)).eq_as_poly(&BiHomPoly::one()));
        // gamma_1 ... gamma_1 = gamma_1
        assert!(gamma_chain_direct(s(2), s(2)).eq_as_poly(&gamma_osp(s(2))));
        // gamma_1 gamma_1/2 = 2u(u - v)
        let chain = gamma_chain_direct(s(2), s(1));
        assert_eq!(chain.to_string(), "2*u^2 - 2*u*v");
    }

    #[test]
    fn alpha_recursion_squared() {
        // (2k + (-1)^(2k))^2 alpha_k^2 = alpha_(k-1/2)^2 (2k+1)(2k-1),
        // with alpha_k^2 = (2k + tau_k)^2 / (2k (2k+1)) d0^2.
        let alpha_sq = |tk: i64| {
            let t = tk.rem_euclid(2);
            ratio((tk + t) * (tk + t), tk * (tk + 1))
        };
        for tk in 2..=40i64 {
            let phase = if tk % 2 == 0 { 1 } else { -1 };
            let lhs = big((tk + phase) * (tk + phase)) * alpha_sq(tk);
            let rhs = alpha_sq(tk - 1) * big((tk + 1) * (tk - 1));
            assert_eq!(lhs, rhs, "2k={tk}");
        }
    }
}
