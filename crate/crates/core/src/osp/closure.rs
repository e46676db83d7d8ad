use num_rational::BigRational;

use crate::exact::{factorial, is_triangle, parity_sign, Algebra, ExactValue, Spin};
use crate::{Error, Result};

use super::engine::poly_p_raw;
use super::gamma::gamma_chain_direct;
use super::poly::BiHomPoly;
use super::triangle::supertriangle_bracketed;

/// Structured coefficient of the unified closure relation
/// `[S^a x S^b]^c = k(a,b,c) S^c`:
///
/// `k = sign * (gamma_hi ... gamma_lo) * poly * triangle / e_norm`
///
/// where the gamma chain follows the empty-product convention
/// (`lo > hi` contributes 1), `poly` is the closure polynomial at the
/// pseudo-degree of the triad, `triangle` is the bracketed supertriangle
/// `delta^S(a b c)`, and `e_norm` is the factorial normalization.
#[derive(Clone, Debug)]
pub struct ClosureCoefficient {
    pub sign: i32,
    pub gamma_hi: Spin,
    pub gamma_lo: Spin,
    pub poly: BiHomPoly,
    pub e_norm: ExactValue,
    pub triangle: ExactValue,
}

impl ClosureCoefficient {
    /// True when the gamma range is empty and contributes a factor 1.
    pub fn gamma_range_empty(&self) -> bool {
        self.gamma_lo > self.gamma_hi
    }

    /// The scalar surd multiplying the polynomial part:
    /// `sign * triangle / e_norm`.
    pub fn scalar(&self) -> ExactValue {
        self.triangle
            .mul(&self.e_norm.inv())
            .mul_rational(&BigRational::from_integer(self.sign.into()))
    }

    /// The full polynomial part including the gamma chain.
    pub fn full_poly(&self) -> BiHomPoly {
        gamma_chain_direct(self.gamma_hi, self.gamma_lo).mul(&self.poly)
    }

    /// Exact numeric value of the whole coefficient at a sample point
    /// (`u = c0 + d0^2` is derived from the samples).
    pub fn eval(&self, c0: &BigRational, d0: &BigRational) -> ExactValue {
        let u = c0 + d0 * d0;
        self.scalar()
            .mul_rational(&self.full_poly().eval_full(&u, d0))
    }

    /// Rendering of the coefficient: scalar times polynomial, with the gamma
    /// chain folded in.
    pub fn render(&self) -> String {
        let full = self.full_poly();
        if full.is_zero() {
            return "0".to_string();
        }
        let scalar = self.scalar();
        let needs_parens = full.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() > 1;
        let poly = full.to_string();
        let scalar_str = scalar.to_string();
        match (scalar_str.as_str(), needs_parens) {
            ("1", false) => poly,
            ("1", true) => poly,
            (_, false) => format!("{scalar_str}*{poly}"),
            (_, true) => format!("{scalar_str}*({poly})"),
        }
    }
}

/// The unified closure coefficient of `[S^a x S^b]^c` for any valid triad,
/// covering both the high-rank and low-rank families:
///
/// * pseudo-degree `pi = a + b + c - 2 sup(a,b,c)`,
/// * polynomial `P^pi(inf(a,b), inf(sup(a,b), c))`,
/// * gamma chain from `sup(a,b,c)` down to `c + 1/2`,
/// * phase `(-1)^(tau_(a+b+c) + 2 sup(a,b,c) tau_(a+b+c))`,
/// * normalization `E = sqrt((2x)!(2y)!/(2 sup)!)` over the two non-sup
///   spins.
pub fn closure_unified(a: Spin, b: Spin, c: Spin) -> Result<ClosureCoefficient> {
    if !is_triangle(a, b, c, Algebra::Osp) {
        return Err(Error::TriangleViolation(a, b, c));
    }
    Ok(closure_parts(a, b, c))
}

/// [`closure_unified`] without the triangle check, for callers that already
/// validated the triad.
pub(crate) fn closure_parts(a: Spin, b: Spin, c: Spin) -> ClosureCoefficient {
    let sup3 = a.max(b).max(c);
    let perim = a.twice_i() + b.twice_i() + c.twice_i();
    let tau_perim = perim.rem_euclid(2);
    let sign = parity_sign(tau_perim * (1 + sup3.twice_i())) as i32;

    let lam = a.min(b);
    let kap = a.max(b).min(c);
    let w = (perim - 2 * sup3.twice_i()) as u32;
    let poly = poly_p_raw(w, lam.twice_i(), kap.twice_i());

    let e_sq = BigRational::new(
        factorial(lam.twice_i()) * factorial(kap.twice_i()),
        factorial(sup3.twice_i()),
    );

    ClosureCoefficient {
        sign,
        gamma_hi: sup3,
        gamma_lo: Spin::from_twice(c.twice() + 1),
        poly,
        e_norm: ExactValue::sqrt_rational(e_sq),
        triangle: supertriangle_bracketed(a, b, c)
            .expect("triad validated")
            .delta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, ratio};

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn top_rank_coefficient_is_one() {
        for (ta, tb) in [(1u32, 1u32), (2, 3), (3, 5), (4, 4)] {
            let cc = closure_unified(s(ta), s(tb), s(ta + tb)).unwrap();
            assert!(cc.gamma_range_empty());
            assert_eq!(cc.render(), "1");
        }
    }

    #[test]
    fn unit_triad() {
        // [S^1 x S^1]^1 = 2 sqrt(3) u S^1
        let cc = closure_unified(s(2), s(2), s(2)).unwrap();
        assert_eq!(cc.render(), "2*sqrt(3)*u");
    }

    #[test]
    fn scalar_product_is_gamma_chain() {
        // [S^k x S^k]^0 = gamma_k ... gamma_1/2
        for tk in 1..=6u32 {
            let cc = closure_unified(s(tk), s(tk), s(0)).unwrap();
            assert_eq!(cc.sign, 1);
            assert_eq!(cc.scalar(), ExactValue::one());
            assert!(cc.poly.eq_as_poly(&BiHomPoly::one()));
            assert!(cc
                .full_poly()
                .eq_as_poly(&gamma_chain_direct(s(tk), s(1))));
        }
    }

    #[test]
    fn defining_products_reproduced() {
        // [S^(1/2) x S^(1/2)]^0 = c0 = u - v
        let cc = closure_unified(s(1), s(1), s(0)).unwrap();
        assert_eq!(cc.scalar(), ExactValue::one());
        assert_eq!(cc.full_poly().to_string(), "u - v");

        // [S^(1/2) x S^(1/2)]^(1/2) = sqrt(2) d0
        let cc = closure_unified(s(1), s(1), s(1)).unwrap();
        let val = cc.scalar().mul_rational(&cc.full_poly().coeff(0));
        assert_eq!(val, ExactValue::sqrt_rational(big(2)));
        assert_eq!(cc.full_poly().d0_parity(), 1);

        // [S^(1/2) x S^k]^(k+1/2) = S^(k+1/2)
        for tk in 1..=8u32 {
            let cc = closure_unified(s(1), s(tk), s(tk + 1)).unwrap();
            assert_eq!(cc.render(), "1");
        }
    }

    #[test]
    fn diagonal_contraction_gives_alpha() {
        // [S^(1/2) x S^k]^k = alpha_k S^k with
        // alpha_k = (-1)^(2k+1) (2k + tau_k)/sqrt(2k(2k+1)) d0.
        for tk in 1..=8u32 {
            let cc = closure_unified(s(1), s(tk), s(tk)).unwrap();
            let poly = cc.full_poly();
            assert_eq!(poly.d0_parity(), 1);
            let value = cc.scalar().mul_rational(&poly.coeff(0));
            let t = tk as i64;
            let expected = ExactValue::sqrt_rational(ratio(1, t * (t + 1)))
                .mul_rational(&big(-parity_sign(t) * (t + t.rem_euclid(2))));
            assert_eq!(value, expected, "2k={tk}");
        }
    }
}
