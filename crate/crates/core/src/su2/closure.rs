use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact::{binomial, factorial, is_triangle, ratio, Algebra, ExactValue, Spin};
use crate::{Error, Result};

use super::triangle::nabla;

/// Coefficient of `c0` in the rank-lowering contraction of an iterated su(2)
/// tensor operator with the fundamental one:
/// `gamma_kappa = c0 * sqrt((2k+1) 2k / 2)`. Zero rank gives zero.
pub fn gamma_su2(kappa: Spin) -> ExactValue {
    let tk = kappa.twice_i();
    if tk == 0 {
        return ExactValue::zero();
    }
    ExactValue::sqrt_rational(ratio((tk + 1) * tk, 2))
}

/// Expansion coefficient `beta_p = C(2 lambda, p)` of the rank-lowering
/// recursion; it satisfies the Pascal rule in `2 lambda`.
pub fn beta_coeff(p: i64, two_lambda: i64) -> Result<BigInt> {
    if p < 0 || p > two_lambda {
        return Err(Error::OutOfRange(format!(
            "beta index p={p} outside [0, {two_lambda}]"
        )));
    }
    Ok(binomial(two_lambda, p))
}

/// The su(2) closure coefficient of `[S^a x S^b]^c = k * S^c`, split into the
/// `c0` exponent `a+b-c` and the exact magnitude
/// `(1/sqrt(2))^(a+b-c) sqrt((2a)!(2b)!/(2c+1)!) nabla(a b c)`.
pub fn closure_coeff_su2(a: Spin, b: Spin, c: Spin) -> Result<(i64, ExactValue)> {
    if !is_triangle(a, b, c, Algebra::Su2) {
        return Err(Error::TriangleViolation(a, b, c));
    }
    let exponent = (a.twice_i() + b.twice_i() - c.twice_i()) / 2;
    let half_pow = BigRational::new(BigInt::from(1), BigInt::from(2).pow(exponent as u32));
    let norm = BigRational::new(
        factorial(a.twice_i()) * factorial(b.twice_i()),
        factorial(c.twice_i() + 1),
    );
    let magnitude = ExactValue::sqrt_rational(half_pow * norm).mul(&nabla(a, b, c)?);
    Ok((exponent, magnitude))
}
