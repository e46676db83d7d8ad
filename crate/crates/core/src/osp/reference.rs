//! Published closed forms used as oracles against the recursion engines:
//! the explicit closure polynomials up to pseudo-degree 3 (all four parity
//! cases unified through tau factors) and the four-parity tables of leading
//! coefficients at half-integral orders. These are transcriptions, not
//! re-derivations; they share no code with the recursion paths.

use num_rational::BigRational;

use crate::exact::{big, ratio, Spin};

use super::poly::BiHomPoly;

fn taus(tl: i64, tk: i64) -> (i64, i64) {
    (tl.rem_euclid(2), tk.rem_euclid(2))
}

/// Closed-form closure polynomial `P^omega(lambda, kappa)` for
/// `2 omega <= 6`; `None` beyond the published range.
pub fn closed_form_p(omega: Spin, lambda: Spin, kappa: Spin) -> Option<BiHomPoly> {
    let (tl, tk) = (lambda.twice_i(), kappa.twice_i());
    let (el, ek) = taus(tl, tk);
    match omega.twice() {
        0 => Some(BiHomPoly::one()),
        1 => Some(BiHomPoly::new(0, 1, vec![big(tl * ek + tk * el)])),
        2 => Some(BiHomPoly::new(
            1,
            0,
            vec![big(tl * tk * (tl + tk - 1)), big(-el * ek)],
        )),
        3 => {
            let a = (tl - el) * (tk - ek) * (tl + tk - 2 + el + ek)
                * (tl * ek + tk * el - 1 - el - ek + el * ek);
            Some(BiHomPoly::new(1, 1, vec![big(a), big(0)]))
        }
        4 => {
            let a = (tl - el) * (tk - ek) * (tl + tk - 2 - el - ek + 2 * el * ek);
            let b = (tl - 1 + el) * (tk - 1 + ek) * (tl + tk - 3 + el + ek - 2 * el * ek);
            let c = 1 + 2 * el * ek;
            Some(BiHomPoly::new(
                2,
                0,
                vec![ratio(a * b, 2), ratio(-a * c, 2), big(0)],
            ))
        }
        5 => {
            let a = (tl - el) * (tk - ek) * (tl + tk - 2 - el - ek) * (tl * ek + tk * el - 2);
            let b = (tl - 2 - ek + el * ek) * (tk - 2 - el + el * ek)
                * (tl + tk - 4 + 2 * el + 2 * ek - el * ek)
                + 4 * (el + ek - el * ek);
            let c = el + ek - el * ek;
            Some(BiHomPoly::new(
                2,
                1,
                vec![ratio(a * b, 2), ratio(-a * c, 2), big(0)],
            ))
        }
        6 => {
            let a = (tl - el) * (tk - ek) * (tl + tk - 4 - el - ek + 2 * el * ek);
            let b = (tl - 1 + el) * (tk - 1 + ek) * (tl - 2) * (tk - 2) * (tl + tk - 3)
                * (tl + tk - 5 + el + ek - 2 * el * ek);
            let c = (tl - 2) * (tk - 2) * (tl + tk - 3) + 2 * el * ek;
            let d = el * ek;
            Some(BiHomPoly::new(
                3,
                0,
                vec![
                    ratio(a * b, 6),
                    ratio(-a * c, 2),
                    ratio(a * d, 2),
                    big(0),
                ],
            ))
        }
        _ => None,
    }
}

/// Published four-parity tables for the leading coefficient at
/// half-integral order `p + 1/2`, for `p = 0..=3`; `None` beyond.
pub fn x0_half_table(p: i64, lambda: Spin, kappa: Spin) -> Option<BigRational> {
    let (tl, tk) = (lambda.twice_i(), kappa.twice_i());
    let (el, ek) = taus(tl, tk);
    let case = (el, ek);
    let value = match p {
        0 => match case {
            (0, 0) => big(0),
            (1, 1) => big(tl + tk),
            (1, 0) => big(tk),
            (0, 1) => big(tl),
            _ => unreachable!(),
        },
        1 => match case {
            (0, 0) => big(-tl * tk * (tl + tk - 2)),
            (1, 1) => big((tl - 1) * (tk - 1) * (tl + tk) * (tl + tk - 2)),
            (1, 0) => big((tl - 1) * tk * (tk - 2) * (tl + tk - 1)),
            (0, 1) => big(tl * (tl - 2) * (tk - 1) * (tl + tk - 1)),
            _ => unreachable!(),
        },
        2 => match case {
            (0, 0) => big(-tl * (tl - 2) * tk * (tk - 2) * (tl + tk - 2) * (tl + tk - 4)),
            (1, 1) => ratio(
                (tl - 1) * (tk - 1) * (tl + tk - 2) * (tl + tk - 4)
                    * ((tl - 2) * (tk - 2) * (tl + tk - 1) + 4),
                2,
            ),
            (1, 0) => ratio(
                (tl - 1) * tk * (tk - 2) * (tl + tk - 3)
                    * ((tl - 2) * (tk - 3) * (tl + tk - 2) + 4),
                2,
            ),
            (0, 1) => ratio(
                tl * (tl - 2) * (tk - 1) * (tl + tk - 3)
                    * ((tl - 3) * (tk - 2) * (tl + tk - 2) + 4),
                2,
            ),
            _ => unreachable!(),
        },
        3 => match case {
            (0, 0) => ratio(
                -tl * (tl - 2) * tk * (tk - 2) * (tl + tk - 4) * (tl + tk - 6)
                    * ((tl - 3) * (tk - 3) * (tl + tk - 3) + 4),
                2,
            ),
            (1, 1) => ratio(
                (tl - 1) * (tl - 3) * (tk - 1) * (tk - 3) * (tl + tk - 2) * (tl + tk - 4)
                    * (tl + tk - 6)
                    * ((tl - 2) * (tk - 2) * (tl + tk - 3) + 12),
                6,
            ),
            (1, 0) => ratio(
                (tl - 1) * (tl - 3) * tk * (tk - 2) * (tk - 4) * (tl + tk - 3) * (tl + tk - 5)
                    * ((tl - 2) * (tk - 3) * (tl + tk - 4) + 12),
                6,
            ),
            (0, 1) => ratio(
                tl * (tl - 2) * (tl - 4) * (tk - 1) * (tk - 3) * (tl + tk - 3) * (tl + tk - 5)
                    * ((tl - 3) * (tk - 2) * (tl + tk - 4) + 12),
                6,
            ),
            _ => unreachable!(),
        },
        _ => return None,
    };
    Some(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::osp::engine::poly_p_raw;
    use crate::osp::xcoeff::x_raw;

    #[test]
    fn engine_matches_closed_forms() {
        for w in 0..=6u32 {
            for tl in 0..=14i64 {
                for tk in tl..=14i64 {
                    if (w as i64) > tl {
                        continue;
                    }
                    let engine = poly_p_raw(w, tl, tk);
                    let closed = closed_form_p(
                        Spin::from_twice(w),
                        Spin::from_twice(tl as u32),
                        Spin::from_twice(tk as u32),
                    )
                    .unwrap();
                    assert!(
                        engine.eq_as_poly(&closed),
                        "w={w} tl={tl} tk={tk}: engine {engine} vs closed {closed}"
                    );
                }
            }
        }
    }

    #[test]
    fn tables_match_recursion() {
        for p in 0..=3i64 {
            for tl in 0..=14i64 {
                for tk in tl..=14i64 {
                    if 2 * p + 1 > tl {
                        continue;
                    }
                    let table = x0_half_table(
                        p,
                        Spin::from_twice(tl as u32),
                        Spin::from_twice(tk as u32),
                    )
                    .unwrap();
                    let rec = x_raw(0, 2 * p + 1, tl, tk);
                    assert_eq!(table, rec, "p={p} tl={tl} tk={tk}");
                }
            }
        }
    }
}
