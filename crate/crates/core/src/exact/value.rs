use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::{Error, Result};

use super::decimal::Decimal;

/// Primes used for square extraction. Every radicand built from factorials
/// of the spins handled here factors over primes far below this bound.
static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let limit = 4096usize;
    let mut is_prime = vec![true; limit + 1];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if is_prime[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= limit {
                is_prime[q] = false;
                q += p;
            }
        }
    }
    primes
});

/// Splits a positive integer into `(s, r)` with `n = s^2 * r` and `r`
/// squarefree over the small-prime table (a leftover cofactor beyond the
/// table is kept in `r` after a perfect-square test).
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut rem = n.clone();
    let mut sqrt_part = BigInt::one();
    let mut free = BigInt::one();
    for &p in SMALL_PRIMES.iter() {
        let p = BigInt::from(p);
        if &p * &p > rem {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rem.div_rem(&p);
            if r.is_zero() {
                rem = q;
                e += 1;
            } else {
                break;
            }
        }
        if e >= 2 {
            sqrt_part *= p.pow(e / 2);
        }
        if e % 2 == 1 {
            free *= &p;
        }
    }
    if !rem.is_one() {
        let root = rem.sqrt();
        if &root * &root == rem {
            sqrt_part *= root;
        } else {
            free *= rem;
        }
    }
    (sqrt_part, free)
}

/// An exact quadratic surd `coeff * sqrt(radicand)`.
///
/// Canonical form: the radicand is a squarefree positive integer (1 when the
/// value is rational), and a zero value has radicand 1. Closed under
/// multiplication; addition is defined only for like radicands.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactValue {
    coeff: BigRational,
    radicand: BigInt,
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue {
            coeff: BigRational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        ExactValue::from_rational(BigRational::one())
    }

    pub fn from_rational(coeff: BigRational) -> Self {
        ExactValue {
            coeff,
            radicand: BigInt::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ExactValue::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `coeff * sqrt(radicand)` with a non-negative rational radicand,
    /// brought to canonical form.
    pub fn new(coeff: BigRational, radicand: BigRational) -> Self {
        assert!(
            !radicand.is_negative(),
            "negative radicand {radicand} is outside the real surd domain"
        );
        if coeff.is_zero() || radicand.is_zero() {
            return ExactValue::zero();
        }
        // p/q = (p q) / q^2, so the radicand can always be made integral.
        let int_rad = radicand.numer() * radicand.denom();
        let coeff = coeff / BigRational::from_integer(radicand.denom().clone());
        let (s, free) = extract_square(&int_rad);
        ExactValue {
            coeff: coeff * BigRational::from_integer(s),
            radicand: free,
        }
    }

    /// `sqrt(r)` for a non-negative rational `r`.
    pub fn sqrt_rational(r: BigRational) -> Self {
        ExactValue::new(BigRational::one(), r)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    /// The canonical squarefree integer radicand (1 for rational values).
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    /// The rational value, if the surd part is trivial.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeff.clone())
        } else {
            None
        }
    }

    /// Signed square `sign(coeff) * coeff^2 * radicand`; the square of the
    /// value with the original sign preserved.
    pub fn signed_square(&self) -> BigRational {
        let sq = &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone());
        if self.coeff.is_negative() {
            -sq
        } else {
            sq
        }
    }

    /// `coeff^2 * radicand`, the exact square of the value.
    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone())
    }

    pub fn mul(&self, other: &ExactValue) -> ExactValue {
        if self.is_zero() || other.is_zero() {
            return ExactValue::zero();
        }
        // Both radicands are squarefree, so the square part of their product
        // is exactly gcd^2.
        let g = self.radicand.gcd(&other.radicand);
        let rad = (&self.radicand / &g) * (&other.radicand / &g);
        ExactValue {
            coeff: &self.coeff * &other.coeff * BigRational::from_integer(g),
            radicand: rad,
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> ExactValue {
        if r.is_zero() {
            return ExactValue::zero();
        }
        ExactValue {
            coeff: &self.coeff * r,
            radicand: self.radicand.clone(),
        }
    }

    pub fn neg(&self) -> ExactValue {
        ExactValue {
            coeff: -self.coeff.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> ExactValue {
        assert!(!self.is_zero(), "inverse of zero surd");
        // 1/(c sqrt(r)) = (1/(c r)) sqrt(r)
        ExactValue {
            coeff: (&self.coeff * BigRational::from_integer(self.radicand.clone()))
                .recip(),
            radicand: self.radicand.clone(),
        }
    }

    /// Sum of two surds; fails with an incompatibility signal when the
    /// canonical radicands differ, instructing the caller to regroup or to
    /// switch to decimal arithmetic.
    pub fn try_add(&self, other: &ExactValue) -> Result<ExactValue> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.radicand != other.radicand {
            return Err(Error::IncompatibleRadicands(
                self.radicand.to_string(),
                other.radicand.to_string(),
            ));
        }
        let coeff = &self.coeff + &other.coeff;
        if coeff.is_zero() {
            return Ok(ExactValue::zero());
        }
        Ok(ExactValue {
            coeff,
            radicand: self.radicand.clone(),
        })
    }

    /// Integer power (non-negative).
    pub fn pow(&self, exp: u32) -> ExactValue {
        let mut acc = ExactValue::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Sign of the value: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Decimal approximation to the requested number of digits.
    pub fn to_decimal(&self, digits: u32) -> Decimal {
        let root = Decimal::sqrt_rational(
            &BigRational::from_integer(self.radicand.clone()),
            digits,
        );
        root.mul_rational(&self.coeff)
    }
}

impl fmt::Display for ExactValue {
    /// Value grammar: `r/s`, `r/s*sqrt(p)`, with `/1` and a unit coefficient
    /// elided (`2*sqrt(6)`, `1/6`, `sqrt(2)`, `0`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let coeff_str = if self.coeff.denom().is_one() {
            format!("{}", self.coeff.numer())
        } else {
            format!("{}/{}", self.coeff.numer(), self.coeff.denom())
        };
        if self.radicand.is_one() {
            write!(f, "{coeff_str}")
        } else if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else if self.coeff == -BigRational::one() {
            write!(f, "-sqrt({})", self.radicand)
        } else {
            write!(f, "{coeff_str}*sqrt({})", self.radicand)
        }
    }
}

impl fmt::Debug for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad rational {s}")))?;
        let den = BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad rational {s}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s}")));
        }
        Ok(BigRational::new(num, den))
    } else {
        let num = BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s}")))?;
        Ok(BigRational::from_integer(num))
    }
}

impl FromStr for ExactValue {
    type Err = Error;

    /// Parses `r/s`, `r/s*sqrt(p/q)`, `sqrt(p)`, `-sqrt(p/q)` and integer
    /// shorthands.
    fn from_str(s: &str) -> Result<ExactValue> {
        let s = s.trim();
        let (coeff_part, rad_part) = match s.find("sqrt(") {
            None => (s, None),
            Some(pos) => {
                let inner = &s[pos + 5..];
                let close = inner
                    .rfind(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed sqrt in {s}")))?;
                let rad = &inner[..close];
                let head = s[..pos].trim().trim_end_matches('*').trim();
                (head, Some(rad))
            }
        };
        let coeff = match coeff_part {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            "+" => BigRational::one(),
            other => parse_rational(other)?,
        };
        let rad = match rad_part {
            None => BigRational::one(),
            Some(r) => parse_rational(r)?,
        };
        if rad.is_negative() {
            return Err(Error::Parse(format!("negative radicand in {s}")));
        }
        Ok(ExactValue::new(coeff, rad))
    }
}

/// A finite sum of surds with pairwise distinct canonical radicands.
///
/// Closed under addition and multiplication; used wherever unlike radicands
/// must be accumulated before either collapsing back to a single surd or
/// dropping to decimal arithmetic.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SurdSum {
    terms: BTreeMap<BigInt, BigRational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        SurdSum::default()
    }

    pub fn from_value(v: &ExactValue) -> Self {
        let mut s = SurdSum::zero();
        s.add_value(v);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_value(&mut self, v: &ExactValue) {
        if v.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(v.radicand.clone())
            .or_insert_with(BigRational::zero);
        *entry += &v.coeff;
        if entry.is_zero() {
            self.terms.remove(&v.radicand);
        }
    }

    pub fn add(&mut self, other: &SurdSum) {
        for (rad, coeff) in &other.terms {
            self.add_value(&ExactValue {
                coeff: coeff.clone(),
                radicand: rad.clone(),
            });
        }
    }

    pub fn mul_value(&self, v: &ExactValue) -> SurdSum {
        let mut out = SurdSum::zero();
        for (rad, coeff) in &self.terms {
            out.add_value(
                &ExactValue {
                    coeff: coeff.clone(),
                    radicand: rad.clone(),
                }
                .mul(v),
            );
        }
        out
    }

    pub fn mul(&self, other: &SurdSum) -> SurdSum {
        let mut out = SurdSum::zero();
        for (rad, coeff) in &other.terms {
            out.add(&self.mul_value(&ExactValue {
                coeff: coeff.clone(),
                radicand: rad.clone(),
            }));
        }
        out
    }

    pub fn negate(&mut self) {
        for coeff in self.terms.values_mut() {
            *coeff = -coeff.clone();
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The sum as a single surd, when at most one radicand survives.
    pub fn collapse(&self) -> Option<ExactValue> {
        match self.terms.len() {
            0 => Some(ExactValue::zero()),
            1 => {
                let (rad, coeff) = self.terms.iter().next().unwrap();
                Some(ExactValue {
                    coeff: coeff.clone(),
                    radicand: rad.clone(),
                })
            }
            _ => None,
        }
    }

    pub fn to_decimal(&self, digits: u32) -> Decimal {
        let mut acc = Decimal::zero(digits);
        for (rad, coeff) in &self.terms {
            let root =
                Decimal::sqrt_rational(&BigRational::from_integer(rad.clone()), digits);
            acc = acc.add(&root.mul_rational(coeff));
        }
        acc
    }
}

impl fmt::Debug for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(rad, coeff)| {
                ExactValue {
                    coeff: coeff.clone(),
                    radicand: rad.clone(),
                }
                .to_string()
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, ratio};

    fn surd(c: i64, r: i64) -> ExactValue {
        ExactValue::new(big(c), big(r))
    }

    #[test]
    fn product_of_like_surds_is_rational() {
        let product = surd(2, 3).mul(&surd(5, 3));
        assert_eq!(product.as_rational(), Some(big(30)));
    }

    #[test]
    fn like_radicands_add() {
        let sum = surd(1, 2).try_add(&surd(3, 2)).unwrap();
        assert_eq!(sum, surd(4, 2));
    }

    #[test]
    fn unlike_radicands_signal() {
        assert!(surd(1, 2).try_add(&surd(1, 3)).is_err());
    }

    #[test]
    fn canonicalization() {
        // sqrt(24) = 2 sqrt(6)
        let v = ExactValue::sqrt_rational(big(24));
        assert_eq!(v, surd(2, 6));
        // sqrt(3/2) = (1/2) sqrt(6)
        let v = ExactValue::sqrt_rational(ratio(3, 2));
        assert_eq!(v, ExactValue::new(ratio(1, 2), big(6)));
    }

    #[test]
    fn grammar_round_trip() {
        for s in ["0", "-5", "2/3", "2*sqrt(6)", "-1/4*sqrt(2)", "sqrt(2)"] {
            let v: ExactValue = s.parse().unwrap();
            assert_eq!(v.to_string(), s, "round trip for {s}");
        }
        // Rational radicands normalize: 3/4 * sqrt(4/9) = 1/2 * 3/4 * ... = 1/2.
        let v: ExactValue = "3/4*sqrt(4/9)".parse().unwrap();
        assert_eq!(v.as_rational(), Some(ratio(1, 2)));
    }

    #[test]
    fn surd_sum_collapse() {
        let mut s = SurdSum::zero();
        s.add_value(&ExactValue::sqrt_rational(big(8)));
        s.add_value(&surd(1, 2));
        // sqrt(8) + sqrt(2) = 3 sqrt(2)
        assert_eq!(s.collapse(), Some(surd(3, 2)));
        s.add_value(&surd(1, 3));
        assert!(s.collapse().is_none());
    }
}
