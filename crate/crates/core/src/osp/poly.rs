use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A homogeneous bivariate polynomial in the closure variables
/// `u = c0 + d0^2` and `v = d0^2`, with an optional frontal `d0` parity
/// prefactor.
///
/// Coefficient `m` multiplies the binomial `u^(degree-m) v^m`. The prefactor
/// flag records a single power of `d0`; a full `d0^2` is always absorbed as
/// one power of `v`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiHomPoly {
    degree: u32,
    d0_parity: u8,
    coeffs: Vec<BigRational>,
}

impl BiHomPoly {
    pub fn zero(degree: u32, d0_parity: u8) -> Self {
        BiHomPoly {
            degree,
            d0_parity,
            coeffs: vec![BigRational::zero(); degree as usize + 1],
        }
    }

    pub fn one() -> Self {
        BiHomPoly {
            degree: 0,
            d0_parity: 0,
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn new(degree: u32, d0_parity: u8, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), degree as usize + 1, "coefficient count");
        assert!(d0_parity <= 1);
        BiHomPoly {
            degree,
            d0_parity,
            coeffs,
        }
    }

    /// Degree-1 polynomial `a u + b v`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        BiHomPoly {
            degree: 1,
            d0_parity: 0,
            coeffs: vec![a, b],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        BiHomPoly {
            degree: 0,
            d0_parity: 0,
            coeffs: vec![c],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn d0_parity(&self) -> u8 {
        self.d0_parity
    }

    /// Coefficient of `u^(degree-m) v^m`; zero outside range.
    pub fn coeff(&self, m: u32) -> BigRational {
        self.coeffs
            .get(m as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Structural equality as polynomials: zero polynomials compare equal
    /// regardless of nominal degree or prefactor.
    pub fn eq_as_poly(&self, other: &BiHomPoly) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.degree == other.degree
            && self.d0_parity == other.d0_parity
            && self.coeffs == other.coeffs
    }

    pub fn scale(&self, r: &BigRational) -> BiHomPoly {
        BiHomPoly {
            degree: self.degree,
            d0_parity: self.d0_parity,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// In-place `self += other * scale`; degrees and parities must agree.
    pub fn add_scaled(&mut self, other: &BiHomPoly, scale: &BigRational) {
        assert_eq!(self.degree, other.degree, "degree mismatch in add");
        assert_eq!(self.d0_parity, other.d0_parity, "parity mismatch in add");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * scale;
        }
    }

    /// Multiply by `r * d0`: flips the prefactor parity and, when a full
    /// `d0^2` forms, absorbs it as one power of `v`.
    pub fn mul_d0(&self, r: &BigRational) -> BiHomPoly {
        if self.d0_parity == 0 {
            BiHomPoly {
                degree: self.degree,
                d0_parity: 1,
                coeffs: self.coeffs.iter().map(|c| c * r).collect(),
            }
        } else {
            let mut coeffs = vec![BigRational::zero(); self.degree as usize + 2];
            for (m, c) in self.coeffs.iter().enumerate() {
                coeffs[m + 1] = c * r;
            }
            BiHomPoly {
                degree: self.degree + 1,
                d0_parity: 0,
                coeffs,
            }
        }
    }

    /// Multiply by the linear form `a u + b v`.
    pub fn mul_linear(&self, a: &BigRational, b: &BigRational) -> BiHomPoly {
        let mut coeffs = vec![BigRational::zero(); self.degree as usize + 2];
        for (m, c) in self.coeffs.iter().enumerate() {
            coeffs[m] += c * a;
            coeffs[m + 1] += c * b;
        }
        BiHomPoly {
            degree: self.degree + 1,
            d0_parity: self.d0_parity,
            coeffs,
        }
    }

    /// Multiply by `v^k`.
    pub fn mul_v_power(&self, k: u32) -> BiHomPoly {
        let mut coeffs = vec![BigRational::zero(); (self.degree + k) as usize + 1];
        for (m, c) in self.coeffs.iter().enumerate() {
            coeffs[m + k as usize] = c.clone();
        }
        BiHomPoly {
            degree: self.degree + k,
            d0_parity: self.d0_parity,
            coeffs,
        }
    }

    /// Full product; `d0` prefactors combine and a completed `d0^2` is
    /// absorbed as a power of `v`.
    pub fn mul(&self, other: &BiHomPoly) -> BiHomPoly {
        let stripped = self.mul_stripped(other);
        if self.d0_parity + other.d0_parity == 2 {
            let mut p = stripped.mul_v_power(1);
            p.d0_parity = 0;
            p
        } else {
            let mut p = stripped;
            p.d0_parity = self.d0_parity + other.d0_parity;
            p
        }
    }

    /// Convolution product of the homogeneous parts, ignoring both
    /// prefactors (result parity 0).
    pub fn mul_stripped(&self, other: &BiHomPoly) -> BiHomPoly {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![BigRational::zero(); degree as usize + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BiHomPoly {
            degree,
            d0_parity: 0,
            coeffs,
        }
    }

    /// Evaluate the homogeneous part at exact `(u, v)`, ignoring the `d0`
    /// prefactor.
    pub fn eval_uv(&self, u: &BigRational, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for _ in 0..(self.degree as usize - m) {
                term *= u;
            }
            for _ in 0..m {
                term *= v;
            }
            acc += term;
        }
        acc
    }

    /// Evaluate including the prefactor at a consistent sample
    /// (`v` must equal `d0^2`).
    pub fn eval_full(&self, u: &BigRational, d0: &BigRational) -> BigRational {
        let v = d0 * d0;
        let base = self.eval_uv(u, &v);
        if self.d0_parity == 1 {
            base * d0
        } else {
            base
        }
    }

    fn monomial_string(&self, m: u32) -> String {
        let up = self.degree - m;
        match (up, m) {
            (0, 0) => String::new(),
            (_, 0) => format!("u{}", power_suffix(up)),
            (0, _) => format!("v{}", power_suffix(m)),
            _ => format!("u{}*v{}", power_suffix(up), power_suffix(m)),
        }
    }
}

fn power_suffix(p: u32) -> String {
    if p == 1 {
        String::new()
    } else {
        format!("^{p}")
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for BiHomPoly {
    /// Canonical rendering: monomials in descending `u`-power (ascending
    /// `m`), exact rational coefficients, `d0*(...)` prefactor when present.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut body = String::new();
        let mut first = true;
        for m in 0..=self.degree {
            let c = self.coeff(m);
            if c.is_zero() {
                continue;
            }
            let mono = self.monomial_string(m);
            let abs = c.abs();
            let coeff_str = if abs.is_one() && !mono.is_empty() {
                String::new()
            } else if mono.is_empty() {
                rational_string(&abs)
            } else {
                format!("{}*", rational_string(&abs))
            };
            if first {
                if c.is_negative() {
                    body.push('-');
                }
                first = false;
            } else if c.is_negative() {
                body.push_str(" - ");
            } else {
                body.push_str(" + ");
            }
            body.push_str(&coeff_str);
            body.push_str(&mono);
        }
        if self.d0_parity == 1 {
            let single_term = self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1;
            if self.degree == 0 {
                if body == "1" {
                    write!(f, "d0")
                } else if body == "-1" {
                    write!(f, "-d0")
                } else {
                    write!(f, "{body}*d0")
                }
            } else if single_term && !body.starts_with('-') {
                write!(f, "d0*{body}")
            } else {
                write!(f, "d0*({body})")
            }
        } else {
            write!(f, "{body}")
        }
    }
}

impl fmt::Debug for BiHomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, ratio};

    #[test]
    fn display_forms() {
        let p = BiHomPoly::linear(big(1), big(-1));
        assert_eq!(p.to_string(), "u - v");
        let p = BiHomPoly::new(2, 0, vec![big(12), big(0), big(0)]);
        assert_eq!(p.to_string(), "12*u^2");
        let p = BiHomPoly::new(0, 1, vec![big(2)]);
        assert_eq!(p.to_string(), "2*d0");
        let p = BiHomPoly::new(1, 1, vec![big(2), big(-1)]);
        assert_eq!(p.to_string(), "d0*(2*u - v)");
        assert_eq!(BiHomPoly::zero(3, 1).to_string(), "0");
    }

    #[test]
    fn d0_square_absorbs_into_v() {
        let p = BiHomPoly::new(0, 1, vec![big(3)]);
        let q = p.mul_d0(&ratio(1, 3));
        assert_eq!(q.degree(), 1);
        assert_eq!(q.d0_parity(), 0);
        assert_eq!(q.to_string(), "v");
    }

    #[test]
    fn products_and_eval() {
        // (u - v)(2u + v) = 2u^2 - u v - v^2
        let a = BiHomPoly::linear(big(1), big(-1));
        let b = a.mul_linear(&big(2), &big(1));
        assert_eq!(b.to_string(), "2*u^2 - u*v - v^2");
        let val = b.eval_uv(&big(3), &big(2));
        assert_eq!(val, big(18 - 6 - 4));
    }
}
