use std::collections::HashMap;

use dashmap::DashMap;

use crate::exact::{
    big, int_part_of_twice, parity_sign, Decimal, ExactValue, Spin, SurdSum,
};
use crate::su2;

use super::provider::{ProvidedValue, Provenance, SixJKey, SixJSuperProvider};
use super::zeng::scalar_factor_modulus;

/// Experimental 6-j^S source computed by graded recoupling of three irreps.
///
/// States are built from super Clebsch-Gordan coefficients assembled as
/// scalar-factor modulus times an su(2) Clebsch-Gordan coefficient, with
/// every scalar-factor phase taken as +1 in the fixed sublevel order
/// `(l = j, then l = j - 1/2)`. The resulting symbol is the normalized
/// overlap of the two coupling orders at the top weight of the top sublevel,
/// carrying the recoupling phase `(-1)^([a+b+c]+[c+d+e]+2c)`.
///
/// The moduli follow the parity-independent factorization; the phases do NOT
/// reproduce the reference conventions (fixing those is exactly the open
/// part of the problem), which is why this provider is tagged experimental.
pub struct ExperimentalProvider {
    digits: u32,
    cache: DashMap<[u32; 6], ProvidedValue>,
}

type Basis = (u32, i64, u32, i64, u32, i64);

impl ExperimentalProvider {
    pub fn new(digits: u32) -> Self {
        ExperimentalProvider {
            digits,
            cache: DashMap::new(),
        }
    }

    fn compute(&self, key: &SixJKey) -> ProvidedValue {
        let [a, b, c, d, e, f] = key.0;
        // Coupling order A: ((a b) c, d) -> e; order B: (a, (b d) f) -> e.
        // Both at the top weight of the top sublevel of e.
        let le = e;
        let me = e.twice_i();

        let state_a = coupled_state(a, b, c, d, e, le, me);
        let state_b = coupled_state_right(a, b, d, f, e, le, me);

        let mut overlap = SurdSum::zero();
        let mut norm_a = SurdSum::zero();
        let mut norm_b = SurdSum::zero();
        for (basis, ca) in &state_a {
            norm_a.add(&ca.mul(ca));
            if let Some(cb) = state_b.get(basis) {
                overlap.add(&ca.mul(cb));
            }
        }
        for (_, cb) in &state_b {
            norm_b.add(&cb.mul(cb));
        }
        if norm_a.is_zero() || norm_b.is_zero() {
            return ProvidedValue::Exact(ExactValue::zero());
        }

        let phase = parity_sign(
            int_part_of_twice(a.twice_i() + b.twice_i() + c.twice_i())
                + int_part_of_twice(c.twice_i() + d.twice_i() + e.twice_i())
                + c.twice_i(),
        );

        // Exact when the overlap is a single surd and both norms are
        // rational; otherwise a decimal at the working precision.
        if let (Some(v), Some(na), Some(nb)) =
            (overlap.collapse(), norm_a.collapse(), norm_b.collapse())
        {
            if let (Some(na), Some(nb)) = (na.as_rational(), nb.as_rational()) {
                let normalizer = ExactValue::sqrt_rational((na * nb).recip());
                return ProvidedValue::Exact(v.mul(&normalizer).mul_rational(&big(phase)));
            }
        }
        let digits = self.digits;
        let norm_prod = norm_a.to_decimal(digits).mul(&norm_b.to_decimal(digits));
        let root = Decimal::sqrt_rational(norm_prod.value(), digits);
        let inv_root = Decimal::from_rational(&root.value().recip(), digits);
        let out = overlap
            .to_decimal(digits)
            .mul(&inv_root)
            .mul_rational(&big(phase));
        ProvidedValue::Approx(out.value().clone())
    }
}

fn sublevels(j: Spin) -> Vec<Spin> {
    if j.twice() == 0 {
        vec![Spin::ZERO]
    } else {
        vec![j, Spin::from_twice(j.twice() - 1)]
    }
}

fn super_cg(
    j1: Spin,
    l1: Spin,
    m1: i64,
    j2: Spin,
    l2: Spin,
    m2: i64,
    j3: Spin,
    l3: Spin,
    m3: i64,
) -> ExactValue {
    let sf = scalar_factor_modulus([j1, j2, j3], [l1, l2, l3]);
    if sf.is_zero() {
        return ExactValue::zero();
    }
    sf.mul(&su2::cg(l1, m1, l2, m2, l3, m3))
}

/// Components of |((j1 j2) j12, j3); j, l, m> over the uncoupled sublevel
/// basis.
fn coupled_state(
    j1: Spin,
    j2: Spin,
    j12: Spin,
    j3: Spin,
    j: Spin,
    l: Spin,
    m: i64,
) -> HashMap<Basis, SurdSum> {
    let mut out: HashMap<Basis, SurdSum> = HashMap::new();
    for l1 in sublevels(j1) {
        for l2 in sublevels(j2) {
            for l12 in sublevels(j12) {
                for l3 in sublevels(j3) {
                    for m1 in range(l1) {
                        for m2 in range(l2) {
                            let m12 = m1 + m2;
                            if m12.abs() > l12.twice_i() {
                                continue;
                            }
                            let m3 = m - m12;
                            if m3.abs() > l3.twice_i() {
                                continue;
                            }
                            let inner = super_cg(j1, l1, m1, j2, l2, m2, j12, l12, m12);
                            if inner.is_zero() {
                                continue;
                            }
                            let outer = super_cg(j12, l12, m12, j3, l3, m3, j, l, m);
                            if outer.is_zero() {
                                continue;
                            }
                            let key = (l1.twice(), m1, l2.twice(), m2, l3.twice(), m3);
                            out.entry(key)
                                .or_insert_with(SurdSum::zero)
                                .add_value(&inner.mul(&outer));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Components of |(j1, (j2 j3) j23); j, l, m> over the same basis.
fn coupled_state_right(
    j1: Spin,
    j2: Spin,
    j3: Spin,
    j23: Spin,
    j: Spin,
    l: Spin,
    m: i64,
) -> HashMap<Basis, SurdSum> {
    let mut out: HashMap<Basis, SurdSum> = HashMap::new();
    for l1 in sublevels(j1) {
        for l2 in sublevels(j2) {
            for l3 in sublevels(j3) {
                for l23 in sublevels(j23) {
                    for m2 in range(l2) {
                        for m3 in range(l3) {
                            let m23 = m2 + m3;
                            if m23.abs() > l23.twice_i() {
                                continue;
                            }
                            let m1 = m - m23;
                            if m1.abs() > l1.twice_i() {
                                continue;
                            }
                            let inner = super_cg(j2, l2, m2, j3, l3, m3, j23, l23, m23);
                            if inner.is_zero() {
                                continue;
                            }
                            let outer = super_cg(j1, l1, m1, j23, l23, m23, j, l, m);
                            if outer.is_zero() {
                                continue;
                            }
                            let key = (l1.twice(), m1, l2.twice(), m2, l3.twice(), m3);
                            out.entry(key)
                                .or_insert_with(SurdSum::zero)
                                .add_value(&inner.mul(&outer));
                        }
                    }
                }
            }
        }
    }
    out
}

fn range(l: Spin) -> Vec<i64> {
    let t = l.twice_i();
    let mut v = Vec::new();
    let mut m = -t;
    while m <= t {
        v.push(m);
        m += 2;
    }
    v
}

impl SixJSuperProvider for ExperimentalProvider {
    fn get(&self, key: &SixJKey) -> Option<ProvidedValue> {
        if !key.is_triangular() {
            return Some(ProvidedValue::Exact(ExactValue::zero()));
        }
        if let Some(hit) = self.cache.get(&key.twice()) {
            return Some(hit.clone());
        }
        let value = self.compute(key);
        self.cache.insert(key.twice(), value.clone());
        Some(value)
    }

    fn provenance(&self) -> Provenance {
        Provenance::ExperimentalRecoupling
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_zero_symbol_is_one() {
        let p = ExperimentalProvider::new(40);
        match p.get(&SixJKey::from_twice([0; 6])).unwrap() {
            ProvidedValue::Exact(v) => assert_eq!(v, ExactValue::one()),
            other => panic!("expected exact 1, got {other:?}"),
        }
    }

    #[test]
    fn non_triangular_is_zero() {
        let p = ExperimentalProvider::new(40);
        match p.get(&SixJKey::from_twice([0, 0, 4, 0, 0, 0])).unwrap() {
            ProvidedValue::Exact(v) => assert!(v.is_zero()),
            other => panic!("expected zero, got {other:?}"),
        }
    }

    #[test]
    fn values_are_deterministic() {
        let p = ExperimentalProvider::new(40);
        let key = SixJKey::from_twice([1, 1, 2, 1, 1, 2]);
        let a = p.get(&key).unwrap().to_decimal(30);
        let b = p.get(&key).unwrap().to_decimal(30);
        assert_eq!(a.value(), b.value());
    }
}
