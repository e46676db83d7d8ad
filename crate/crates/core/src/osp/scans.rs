use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::Spin;

use super::closure::closure_parts;
use super::engine::poly_p_raw;
use super::qpoly::poly_q_raw;

/// One scan failure, rendered exactly.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of an exhaustive scan: how many instances were checked and every
/// counterexample found, in input order.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// The two zero-tensor families: integral pair at the top half-excess rank,
/// and integral-below-half-integral at the bottom half-excess rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremFamily {
    /// `[S^k x S^k']^(k+k'-1/2) = 0` for integral `k, k' >= 1`.
    T1,
    /// `[S^k x S^kappa]^(kappa-k+1/2) = 0` for integral `k` below
    /// half-integral `kappa`.
    T2,
}

/// Asserts the closure polynomial part vanishes identically on every family
/// instance with doubled spins up to `bound`.
pub fn theorem_zero_checks(family: TheoremFamily, bound: u32) -> ScanReport {
    let mut instances: Vec<(u32, u32, u32)> = Vec::new();
    match family {
        TheoremFamily::T1 => {
            for tk in (2..=bound).step_by(2) {
                for tkp in (2..=bound).step_by(2) {
                    instances.push((tk, tkp, tk + tkp - 1));
                }
            }
        }
        TheoremFamily::T2 => {
            for tk in (2..=bound).step_by(2) {
                for tkappa in ((tk + 1)..=bound).step_by(2) {
                    instances.push((tk, tkappa, tkappa - tk + 1));
                }
            }
        }
    }
    let mut counterexamples: Vec<Counterexample> = instances
        .par_iter()
        .filter_map(|&(ta, tb, tc)| {
            let cc = closure_parts(
                Spin::from_twice(ta),
                Spin::from_twice(tb),
                Spin::from_twice(tc),
            );
            if cc.poly.is_zero() {
                None
            } else {
                Some(Counterexample {
                    input: format!(
                        "({}, {}, {})",
                        Spin::from_twice(ta),
                        Spin::from_twice(tb),
                        Spin::from_twice(tc)
                    ),
                    lhs: cc.poly.to_string(),
                    rhs: "0".to_string(),
                })
            }
        })
        .collect();
    counterexamples.sort_by(|x, y| x.input.cmp(&y.input));
    ScanReport {
        checked: instances.len(),
        counterexamples,
    }
}

fn admissible_high(bound: u32) -> Vec<(u32, u32, u32)> {
    let mut v = Vec::new();
    for tl in 0..=bound {
        for tk in tl..=bound {
            for w in 0..=tl {
                v.push((w, tl, tk));
            }
        }
    }
    v
}

/// Scans every admissible argument triple with doubled spins up to `bound`
/// for a non-integral expansion coefficient. The integrality statement is an
/// asserted conjecture, not a type invariant: the report lists any violation
/// verbatim.
pub fn conjecture1_scan(bound: u32) -> ScanReport {
    let instances = admissible_high(bound);
    let mut counterexamples: Vec<Counterexample> = instances
        .par_iter()
        .flat_map_iter(|&(w, tl, tk)| {
            let poly = poly_p_raw(w, tl as i64, tk as i64);
            let mut bad = Vec::new();
            for (m, c) in poly.coeffs().iter().enumerate() {
                if !c.denom().is_one() {
                    bad.push(Counterexample {
                        input: format!(
                            "x_{m} at omega={}, lambda={}, kappa={}",
                            Spin::from_twice(w),
                            Spin::from_twice(tl),
                            Spin::from_twice(tk)
                        ),
                        lhs: c.to_string(),
                        rhs: "an integer".to_string(),
                    });
                }
            }
            bad
        })
        .collect();
    counterexamples.sort_by(|x, y| x.input.cmp(&y.input));
    ScanReport {
        checked: instances.len(),
        counterexamples,
    }
}

/// Scans the functional relation between the low-rank and high-rank
/// polynomials, `Q^w(lambda; kappa) = P^w(lambda, kappa - lambda + w)`, on
/// every admissible low-rank triple with doubled spins up to `bound`.
pub fn conjecture2_scan(bound: u32) -> ScanReport {
    let mut instances = Vec::new();
    for tl in 1..=bound {
        for tk in tl..=bound {
            for w in 0..tl {
                instances.push((w, tl, tk));
            }
        }
    }
    let mut counterexamples: Vec<Counterexample> = instances
        .par_iter()
        .filter_map(|&(w, tl, tk)| {
            let q = poly_q_raw(w, tl as i64, tk as i64);
            let p = poly_p_raw(w, tl as i64, (tk - tl + w) as i64);
            if q.eq_as_poly(&p) {
                None
            } else {
                Some(Counterexample {
                    input: format!(
                        "omega={}, lambda={}, kappa={}",
                        Spin::from_twice(w),
                        Spin::from_twice(tl),
                        Spin::from_twice(tk)
                    ),
                    lhs: q.to_string(),
                    rhs: p.to_string(),
                })
            }
        })
        .collect();
    counterexamples.sort_by(|x, y| x.input.cmp(&y.input));
    ScanReport {
        checked: instances.len(),
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_families_hold() {
        assert!(theorem_zero_checks(TheoremFamily::T1, 12).passed());
        assert!(theorem_zero_checks(TheoremFamily::T2, 12).passed());
    }

    #[test]
    fn non_family_member_is_nonzero() {
        // (1, 1/2, 1) is outside both families and has a nonzero coefficient.
        let cc = closure_parts(
            Spin::from_twice(2),
            Spin::from_twice(1),
            Spin::from_twice(2),
        );
        assert!(!cc.poly.is_zero());
        // Half-integral below integral at the bottom half-excess rank is
        // outside the second family and genuinely nonzero.
        let cc = closure_parts(
            Spin::from_twice(3),
            Spin::from_twice(6),
            Spin::from_twice(4),
        );
        assert!(!cc.poly.is_zero());
    }

    #[test]
    fn conjecture_scans_clean_on_verified_range() {
        assert!(conjecture1_scan(7).passed());
        assert!(conjecture2_scan(7).passed());
    }
}
