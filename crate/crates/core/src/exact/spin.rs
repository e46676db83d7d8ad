use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A non-negative half-integer spin, stored as its doubled value.
///
/// Every formula in this crate is written in doubled units (`2j`), so spin
/// arithmetic stays in plain integers and no fraction handling is needed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    /// Spin from its doubled value `2j`.
    pub const fn from_twice(twice: u32) -> Self {
        Spin { twice }
    }

    /// Integral spin `j`.
    pub const fn from_int(j: u32) -> Self {
        Spin { twice: 2 * j }
    }

    pub const ZERO: Spin = Spin { twice: 0 };
    pub const HALF: Spin = Spin { twice: 1 };
    pub const ONE: Spin = Spin { twice: 2 };

    /// The doubled value `2j`.
    pub const fn twice(self) -> u32 {
        self.twice
    }

    /// The doubled value as a signed integer, for difference arithmetic.
    pub const fn twice_i(self) -> i64 {
        self.twice as i64
    }

    pub const fn is_integral(self) -> bool {
        self.twice % 2 == 0
    }

    /// Tau-parity: 0 for integral spins, 1 for half-integral spins.
    ///
    /// Equals `[j + 1/2] - [j]` with `[.]` the integral part.
    pub const fn tau(self) -> u32 {
        self.twice % 2
    }

    /// Integral part `[j]`.
    pub const fn int_part(self) -> i64 {
        (self.twice / 2) as i64
    }

    /// `(-1)^{2j} = 1 - 2 tau`.
    pub const fn phase_two(self) -> i64 {
        1 - 2 * (self.tau() as i64)
    }

    /// `j + k/2` for a signed half-step offset `k`; `None` below zero.
    pub fn offset(self, half_steps: i64) -> Option<Spin> {
        let t = self.twice_i() + half_steps;
        if t < 0 {
            None
        } else {
            Some(Spin::from_twice(t as u32))
        }
    }

    pub fn min(self, other: Spin) -> Spin {
        if self.twice <= other.twice {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Spin) -> Spin {
        if self.twice >= other.twice {
            self
        } else {
            other
        }
    }
}

/// Integral part `[x]` of a half-integer given by its doubled value, as a
/// floor (so `[-1/2] = -1`).
pub(crate) fn int_part_of_twice(twice: i64) -> i64 {
    twice.div_euclid(2)
}

/// Tau-parity of a half-integer given by its doubled value.
pub(crate) fn tau_of_twice(twice: i64) -> i64 {
    twice.rem_euclid(2)
}

/// Which algebra's triangle rule to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Algebra {
    /// Integral perimeter required.
    Su2,
    /// Perimeter may be integral or half-integral.
    Osp,
}

/// True iff `|a-b| <= c <= a+b`, with an integral perimeter additionally
/// required for su(2).
pub fn is_triangle(a: Spin, b: Spin, c: Spin, algebra: Algebra) -> bool {
    let (ta, tb, tc) = (a.twice_i(), b.twice_i(), c.twice_i());
    if (ta - tb).abs() > tc || tc > ta + tb {
        return false;
    }
    match algebra {
        Algebra::Su2 => (ta + tb + tc) % 2 == 0,
        Algebra::Osp => true,
    }
}

/// The four parity cases of a spin pair, keyed by the tau-parities of
/// (lambda, kappa): (a) both integral, (b) both half-integral, (c) lambda
/// half-integral, (d) kappa half-integral.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityCase {
    A,
    B,
    C,
    D,
}

impl ParityCase {
    pub fn of(lambda: Spin, kappa: Spin) -> ParityCase {
        match (lambda.tau(), kappa.tau()) {
            (0, 0) => ParityCase::A,
            (1, 1) => ParityCase::B,
            (1, 0) => ParityCase::C,
            _ => ParityCase::D,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Spin {
    type Err = Error;

    /// Accepts `"2"`, `"3/2"` and `"1.5"`.
    fn from_str(s: &str) -> Result<Spin> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(Error::Parse(format!("spin denominator must be 2: {s}")));
            }
            let n: u32 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad spin {s}")))?;
            return Ok(Spin::from_twice(n));
        }
        if let Some(head) = s.strip_suffix(".5") {
            let n: u32 = if head.is_empty() {
                0
            } else {
                head.parse()
                    .map_err(|_| Error::Parse(format!("bad spin {s}")))?
            };
            return Ok(Spin::from_twice(2 * n + 1));
        }
        let j: u32 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad spin {s}")))?;
        Ok(Spin::from_int(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        assert_eq!(Spin::from_twice(2).tau(), 0);
        assert_eq!(Spin::from_twice(1).tau(), 1);
        assert_eq!(Spin::from_twice(0).tau(), 0);
    }

    #[test]
    fn phase_two_kappa() {
        assert_eq!(Spin::HALF.phase_two(), -1);
        assert_eq!(Spin::ONE.phase_two(), 1);
        assert_eq!(Spin::from_twice(7).phase_two(), -1);
    }

    #[test]
    fn triangle_rules() {
        let h = Spin::HALF;
        assert!(is_triangle(h, h, h, Algebra::Osp));
        assert!(!is_triangle(h, h, h, Algebra::Su2));
        assert!(!is_triangle(
            Spin::from_int(1),
            Spin::from_int(3),
            Spin::from_int(1),
            Algebra::Su2
        ));
        assert!(is_triangle(h, h, Spin::ONE, Algebra::Su2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<Spin>().unwrap(), Spin::from_twice(3));
        assert_eq!("2".parse::<Spin>().unwrap(), Spin::from_int(2));
        assert_eq!("1.5".parse::<Spin>().unwrap(), Spin::from_twice(3));
        assert_eq!(Spin::from_twice(3).to_string(), "3/2");
        assert_eq!(Spin::from_twice(4).to_string(), "2");
    }

    #[test]
    fn tau_algebra_sweep() {
        // tau^2 = tau, tau_k * tau_{k-1/2} = 0, 1 - tau_{k-1/2} = tau_k,
        // tau_{l+k} = tau_l + tau_k - 2 tau_l tau_k.
        for t in 0..=200i64 {
            let tau = |x: i64| x.rem_euclid(2);
            assert_eq!(tau(t) * tau(t), tau(t));
            if t >= 1 {
                assert_eq!(tau(t) * tau(t - 1), 0);
                assert_eq!(1 - tau(t - 1), tau(t));
            }
            for l in 0..=200i64 {
                assert_eq!(tau(l + t), tau(l) + tau(t) - 2 * tau(l) * tau(t));
            }
        }
    }
}
