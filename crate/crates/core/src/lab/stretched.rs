use crate::exact::{int_part_of_twice, parity_sign, ExactValue};
use crate::osp::supertriangle_bracketed;

use super::provider::{ProvidedValue, Provenance, SixJKey, SixJSuperProvider};

/// Provider of the fully stretched symbols `{a b a+b; d a+b+d b+d}`, whose
/// values are forced by composing the top-rank closure relations: the sum
/// rule degenerates to a single term there and fixes
///
/// `{a b c; d e f} = (-1)^([a+b+c] + [c+d+e] + 2c)`
///
/// (the supertriangle ratio collapses to one exactly). Covers only those
/// keys; everything else is `None`.
pub struct StretchedProvider;

/// The stretched value when the key is fully stretched, else `None`.
pub fn stretched_value(key: &SixJKey) -> Option<ExactValue> {
    let [a, b, c, d, e, f] = key.0;
    if c.twice() != a.twice() + b.twice()
        || e.twice() != c.twice() + d.twice()
        || f.twice() != b.twice() + d.twice()
    {
        return None;
    }
    let exponent = int_part_of_twice(a.twice_i() + b.twice_i() + c.twice_i())
        + int_part_of_twice(c.twice_i() + d.twice_i() + e.twice_i())
        + c.twice_i();
    // The supertriangle ratio delta^S(abc) delta^S(cde) /
    // (delta^S(bdf) delta^S(afe)) is exactly 1 on stretched keys; assert it
    // rather than assume it.
    let num = supertriangle_bracketed(a, b, c)
        .unwrap()
        .delta
        .mul(&supertriangle_bracketed(c, d, e).unwrap().delta);
    let den = supertriangle_bracketed(b, d, f)
        .unwrap()
        .delta
        .mul(&supertriangle_bracketed(a, f, e).unwrap().delta);
    let ratio = num.mul(&den.inv());
    debug_assert_eq!(ratio, ExactValue::one());
    Some(ratio.mul_rational(&crate::exact::big(parity_sign(exponent))))
}

impl SixJSuperProvider for StretchedProvider {
    fn get(&self, key: &SixJKey) -> Option<ProvidedValue> {
        if !key.is_triangular() {
            return Some(ProvidedValue::Exact(ExactValue::zero()));
        }
        stretched_value(key).map(ProvidedValue::Exact)
    }

    fn provenance(&self) -> Provenance {
        Provenance::StretchedClosure
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_zero_symbol() {
        let v = stretched_value(&SixJKey::from_twice([0; 6])).unwrap();
        assert_eq!(v, ExactValue::one());
    }

    #[test]
    fn signs_are_unit() {
        for ta in 0..=3u32 {
            for tb in 0..=3u32 {
                for td in 0..=3u32 {
                    let key = SixJKey::from_twice([
                        ta,
                        tb,
                        ta + tb,
                        td,
                        ta + tb + td,
                        tb + td,
                    ]);
                    let v = stretched_value(&key).unwrap();
                    assert_eq!(v.square(), crate::exact::big(1), "{key}");
                }
            }
        }
    }

    #[test]
    fn non_stretched_is_none() {
        assert!(stretched_value(&SixJKey::from_twice([2, 2, 2, 2, 2, 2])).is_none());
    }
}
