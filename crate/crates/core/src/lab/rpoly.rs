use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{big, double_factorial, is_triangle, Algebra, Spin};
use crate::osp::BiHomPoly;
use crate::{Error, Result};

/// Product of the two closure polynomials of a coupled triad pair, with the
/// frontal `d0` powers stripped: a plain homogeneous polynomial of degree
/// `[omega] + [omega']` whose coefficients are the convolution of the two
/// expansion-coefficient lists.
#[derive(Clone, Debug)]
pub struct RPoly {
    pub base: BiHomPoly,
    /// The number of `d0` factors stripped: `tau(a+b+c) + tau(c+d+e)`.
    pub stripped_d0: u32,
}

/// `R(a,b;c | c,d;e)`: the stripped product of
/// `P^(pi(a,b,c))` and `P^(pi(c,d,e))` at the unified-closure arguments.
pub fn poly_r(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin) -> Result<RPoly> {
    if !is_triangle(a, b, c, Algebra::Osp) {
        return Err(Error::TriangleViolation(a, b, c));
    }
    if !is_triangle(c, d, e, Algebra::Osp) {
        return Err(Error::TriangleViolation(c, d, e));
    }
    let p1 = closure_poly(a, b, c);
    let p2 = closure_poly(c, d, e);
    let stripped_d0 = (p1.d0_parity() + p2.d0_parity()) as u32;
    Ok(RPoly {
        base: p1.mul_stripped(&p2),
        stripped_d0,
    })
}

/// The closure polynomial of one triad at the unified arguments
/// `P^(a+b+c-2sup)(inf(a,b), inf(sup(a,b), c))`.
pub(crate) fn closure_poly(a: Spin, b: Spin, c: Spin) -> BiHomPoly {
    let sup3 = a.max(b).max(c);
    let w = (a.twice_i() + b.twice_i() + c.twice_i() - 2 * sup3.twice_i()) as u32;
    crate::osp::engine::poly_p_raw(w, a.min(b).twice_i(), a.max(b).min(c).twice_i())
}

/// Homogeneous polynomial carrying the non-factorial part of an ordered
/// gamma-chain product: `prod_l ((2l+1)^2 u - v)` over the integral-part
/// range of the chain, with the empty product equal to 1.
#[derive(Clone, Debug)]
pub struct ZPoly {
    pub base: BiHomPoly,
}

impl ZPoly {
    pub fn degree(&self) -> u32 {
        self.base.degree()
    }
}

/// Closed-form representation of the ordered product
/// `gamma_hi gamma_(hi - 1/2) ... gamma_lo`:
/// a double-factorial rational prefactor, a power of `u`, and a [`ZPoly`].
#[derive(Clone, Debug)]
pub struct GammaProduct {
    pub prefactor: BigRational,
    pub u_power: u32,
    pub z: ZPoly,
}

impl GammaProduct {
    /// The product as a plain polynomial.
    pub fn to_poly(&self) -> BiHomPoly {
        let mut acc = BiHomPoly::constant(self.prefactor.clone());
        for _ in 0..self.u_power {
            acc = acc.mul_linear(&BigRational::one(), &BigRational::zero());
        }
        acc.mul(&self.z.base)
    }
}

/// Closed form of the gamma-chain product over `[lo, hi]` in half steps,
/// with the empty-range convention (`lo > hi` gives 1). A chain reaching
/// rank zero contains a vanishing factor and collapses to zero.
pub fn gamma_product(hi: Spin, lo: Spin) -> GammaProduct {
    if lo > hi {
        return GammaProduct {
            prefactor: BigRational::one(),
            u_power: 0,
            z: ZPoly {
                base: BiHomPoly::one(),
            },
        };
    }
    if lo.twice() == 0 {
        // gamma_0 = 0 annihilates the chain.
        return GammaProduct {
            prefactor: BigRational::zero(),
            u_power: 0,
            z: ZPoly {
                base: BiHomPoly::one(),
            },
        };
    }
    let ip = crate::exact::int_part_of_twice;
    let hi_ip = hi.int_part();
    let lo_ip = lo.int_part();
    let hi_up = ip(hi.twice_i() + 1);
    let lo_down = ip(lo.twice_i() - 1);

    let prefactor = BigRational::new(
        double_factorial(2 * hi_ip) * double_factorial(2 * lo_ip - 1),
        double_factorial(2 * lo_down) * double_factorial(2 * hi_up - 1),
    );
    let u_power = (hi_ip - lo_down) as u32;

    let mut z = BiHomPoly::one();
    let z_top = ip(hi.twice_i() - 1);
    let mut l = lo_ip;
    while l <= z_top {
        z = z.mul_linear(&big((2 * l + 1) * (2 * l + 1)), &big(-1));
        l += 1;
    }
    GammaProduct {
        prefactor,
        u_power,
        z: ZPoly { base: z },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::osp::gamma_chain_direct;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn empty_range_is_one() {
        let g = gamma_product(s(2), s(3));
        assert!(g.to_poly().eq_as_poly(&BiHomPoly::one()));
        assert_eq!(g.z.degree(), 0);
    }

    #[test]
    fn single_gamma_one() {
        // gamma_1 alone: 2u.
        let g = gamma_product(s(2), s(2));
        assert_eq!(g.to_poly().to_string(), "2*u");
    }

    #[test]
    fn single_half_step_is_z_degree_one() {
        // gamma_1/2 = c0 = u - v arises purely from the Z factor.
        let g = gamma_product(s(1), s(1));
        assert_eq!(g.prefactor, BigRational::one());
        assert_eq!(g.u_power, 0);
        assert_eq!(g.z.degree(), 1);
        assert_eq!(g.to_poly().to_string(), "u - v");
    }

    #[test]
    fn closed_form_matches_direct_chain() {
        for t_hi in 0..=20u32 {
            for t_lo in 1..=t_hi {
                let closed = gamma_product(s(t_hi), s(t_lo)).to_poly();
                let direct = gamma_chain_direct(s(t_hi), s(t_lo));
                assert!(
                    closed.eq_as_poly(&direct),
                    "hi={t_hi} lo={t_lo}: {closed} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn r_poly_unit_product() {
        // Both pseudo-degrees zero: R = 1.
        let r = poly_r(s(2), s(3), s(5), s(2), s(7)).unwrap();
        assert!(r.base.eq_as_poly(&BiHomPoly::one()));
        assert_eq!(r.stripped_d0, 0);
    }

    #[test]
    fn r_poly_all_half_spins() {
        // (1/2,1/2,1/2,1/2,1/2): each factor is 2 d0, R = 4, two d0 stripped.
        let r = poly_r(s(1), s(1), s(1), s(1), s(1)).unwrap();
        assert_eq!(r.base.to_string(), "4");
        assert_eq!(r.stripped_d0, 2);
        assert_eq!(r.base.degree(), 0);
    }

    #[test]
    fn convolution_matches_coefficient_lists() {
        use crate::osp::xcoeff::x_raw;
        let quint = [(2u32, 2u32, 2u32, 2u32, 2u32), (3, 2, 3, 2, 3), (4, 3, 3, 3, 4)];
        for (ta, tb, tc, td, te) in quint {
            let r = poly_r(s(ta), s(tb), s(tc), s(td), s(te)).unwrap();
            // Rebuild the coefficients by convolving the two x-lists obtained
            // from the independent coefficient recursions.
            let args1 = unified_args(s(ta), s(tb), s(tc));
            let args2 = unified_args(s(tc), s(td), s(te));
            for m in 0..=r.base.degree() {
                let mut acc = BigRational::zero();
                for n in 0..=m {
                    acc += x_raw(n as i64, args1.0, args1.1, args1.2)
                        * x_raw((m - n) as i64, args2.0, args2.1, args2.2);
                }
                assert_eq!(acc, r.base.coeff(m), "m={m} at {ta},{tb},{tc},{td},{te}");
            }
        }
    }

    fn unified_args(a: Spin, b: Spin, c: Spin) -> (i64, i64, i64) {
        let sup3 = a.max(b).max(c);
        let w = a.twice_i() + b.twice_i() + c.twice_i() - 2 * sup3.twice_i();
        (w, a.min(b).twice_i(), a.max(b).min(c).twice_i())
    }

    #[test]
    fn gamma_zero_annihilates() {
        let g = gamma_product(s(3), s(0));
        assert!(g.to_poly().is_zero());
        assert!(gamma_chain_direct(s(3), s(0)).is_zero());
    }
}
