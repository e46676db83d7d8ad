use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{factorial, is_triangle, Algebra, ExactValue, Spin};

use super::cache::SIXJ_CACHE;
use super::triangle::tri_delta_sq;

pub(crate) fn triads(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Spin) -> [[Spin; 3]; 4] {
    [[a, b, c], [a, e, f], [d, b, f], [d, e, c]]
}

/// The rational single-sum kernel of the 6-j symbol: the alternating sum over
/// `t` of `(t+1)! / prod(...)`, so that the full symbol is this value times
/// the four triangle coefficients. Triads are assumed valid.
pub fn racah_sum(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Spin) -> BigRational {
    let (ta, tb, tc) = (a.twice_i(), b.twice_i(), c.twice_i());
    let (td, te, tf) = (d.twice_i(), e.twice_i(), f.twice_i());
    // Triad sums and opposite-pair sums, all integral in doubled units.
    let t1 = (ta + tb + tc) / 2;
    let t2 = (ta + te + tf) / 2;
    let t3 = (td + tb + tf) / 2;
    let t4 = (td + te + tc) / 2;
    let p1 = (ta + tb + td + te) / 2;
    let p2 = (ta + tc + td + tf) / 2;
    let p3 = (tb + tc + te + tf) / 2;

    let t_min = t1.max(t2).max(t3).max(t4);
    let t_max = p1.min(p2).min(p3);
    let mut sum = BigRational::zero();
    for t in t_min..=t_max {
        let den = factorial(t - t1)
            * factorial(t - t2)
            * factorial(t - t3)
            * factorial(t - t4)
            * factorial(p1 - t)
            * factorial(p2 - t)
            * factorial(p3 - t);
        let sign = if t % 2 == 0 { 1 } else { -1 };
        sum += BigRational::new(BigInt::from(sign) * factorial(t + 1), den);
    }
    sum
}

/// Canonical representative of the argument tuple under the 24 classical
/// 6-j symmetries (column permutations and pairwise upper/lower exchanges).
pub(crate) fn canonical_key(key: [u32; 6]) -> [u32; 6] {
    let [a, b, c, d, e, f] = key;
    let columns = [[a, d], [b, e], [c, f]];
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut best = key;
    for perm in perms {
        let p: Vec<[u32; 2]> = perm.iter().map(|&i| columns[i]).collect();
        // Flip the lower and upper rows in an even number of columns.
        for flips in [[false; 3], [false, true, true], [true, false, true], [true, true, false]] {
            let mut cand = [0u32; 6];
            for (i, col) in p.iter().enumerate() {
                let (hi, lo) = if flips[i] { (col[1], col[0]) } else { (col[0], col[1]) };
                cand[i] = hi;
                cand[i + 3] = lo;
            }
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

/// Exact 6-j symbol `{a b c; d e f}`. Non-triangular arguments give exact
/// zero. Values are memoized under the canonical symmetry key; the cache is
/// exact and convention-independent.
pub fn sixj(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Spin) -> ExactValue {
    for [x, y, z] in triads(a, b, c, d, e, f) {
        if !is_triangle(x, y, z, Algebra::Su2) {
            return ExactValue::zero();
        }
    }
    let key = canonical_key([
        a.twice(),
        b.twice(),
        c.twice(),
        d.twice(),
        e.twice(),
        f.twice(),
    ]);
    if let Some(hit) = SIXJ_CACHE.get(&key) {
        return hit.clone();
    }
    let mut tri = BigRational::one();
    for [x, y, z] in triads(a, b, c, d, e, f) {
        tri *= tri_delta_sq(x, y, z).expect("triads checked");
    }
    let value = ExactValue::sqrt_rational(tri).mul_rational(&racah_sum(a, b, c, d, e, f));
    SIXJ_CACHE.insert(key, value.clone());
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, ratio};

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    fn sixj_t(k: [u32; 6]) -> ExactValue {
        sixj(s(k[0]), s(k[1]), s(k[2]), s(k[3]), s(k[4]), s(k[5]))
    }

    #[test]
    fn all_zero_symbol() {
        assert_eq!(sixj_t([0; 6]), ExactValue::one());
    }

    #[test]
    fn known_values() {
        // {1 1 1; 1 1 1} = 1/6
        assert_eq!(sixj_t([2, 2, 2, 2, 2, 2]).as_rational(), Some(ratio(1, 6)));
        // {1/2 1/2 0; 1/2 1/2 1} = 1/2
        assert_eq!(sixj_t([1, 1, 0, 1, 1, 2]).as_rational(), Some(ratio(1, 2)));
    }

    #[test]
    fn non_triangular_is_zero() {
        assert_eq!(sixj_t([2, 6, 2, 2, 2, 2]), ExactValue::zero());
    }

    #[test]
    fn zero_argument_closed_form() {
        // {a b 0; d e f} = delta_ab delta_de (-1)^{a+d+f} / sqrt((2a+1)(2d+1))
        for ta in 0..=4u32 {
            for td in 0..=4u32 {
                for tf in 0..=8u32 {
                    let v = sixj_t([ta, ta, 0, td, td, tf]);
                    if !is_triangle(s(ta), s(td), s(tf), Algebra::Su2) {
                        assert!(v.is_zero());
                        continue;
                    }
                    let sign = crate::exact::parity_sign(((ta + td + tf) / 2) as i64);
                    let expected = ExactValue::sqrt_rational(
                        ratio(1, ((ta + 1) * (td + 1)) as i64),
                    )
                    .mul_rational(&big(sign));
                    assert_eq!(v, expected, "2a={ta} 2d={td} 2f={tf}");
                }
            }
        }
    }

    #[test]
    fn symmetry_invariance() {
        let base = sixj_t([2, 4, 6, 4, 2, 4]);
        assert_eq!(sixj_t([4, 2, 6, 2, 4, 4]), base);
        assert_eq!(sixj_t([6, 4, 2, 4, 4, 2]), base);
        assert_eq!(sixj_t([2, 2, 4, 4, 4, 6]), base);
    }

    #[test]
    fn orthogonality() {
        // sum_x (2x+1) {a b x; c d p}{a b x; c d q} = delta_pq / (2p+1)
        use crate::exact::SurdSum;
        for ta in 0..=4u32 {
            for tb in 0..=4u32 {
                for tc in 0..=4u32 {
                    for td in 0..=4u32 {
                        for tp in 0..=4u32 {
                            for tq in 0..=4u32 {
                                if !is_triangle(s(ta), s(td), s(tp), Algebra::Su2)
                                    || !is_triangle(s(tb), s(tc), s(tp), Algebra::Su2)
                                    || !is_triangle(s(ta), s(td), s(tq), Algebra::Su2)
                                    || !is_triangle(s(tb), s(tc), s(tq), Algebra::Su2)
                                {
                                    continue;
                                }
                                let mut acc = SurdSum::zero();
                                for tx in 0..=8u32 {
                                    let w = big((tx + 1) as i64);
                                    let p1 = sixj_t([ta, tb, tx, tc, td, tp]);
                                    let p2 = sixj_t([ta, tb, tx, tc, td, tq]);
                                    acc.add_value(&p1.mul(&p2).mul_rational(&w));
                                }
                                let expected = if tp == tq {
                                    ExactValue::from_rational(ratio(1, (tp + 1) as i64))
                                } else {
                                    ExactValue::zero()
                                };
                                assert_eq!(acc.collapse(), Some(expected));
                            }
                        }
                    }
                }
            }
        }
    }
}
