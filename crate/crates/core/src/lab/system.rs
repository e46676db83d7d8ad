use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact::{big, ExactValue, Spin};
use crate::Result;

use super::residual::assemble_sum_rule;

/// One linear equation of the identification system: the coefficient of each
/// unknown symbol (keyed by the doubled `f`) and the right-hand value, at
/// binomial index `m`. Values use the surd string grammar.
#[derive(Clone, Debug, Serialize)]
pub struct SystemRow {
    pub m: u32,
    pub unknown_coeffs: BTreeMap<u32, String>,
    pub rhs: String,
    #[serde(skip)]
    pub unknown_coeffs_exact: BTreeMap<u32, ExactValue>,
    #[serde(skip)]
    pub rhs_exact: ExactValue,
}

/// The per-binomial linear system over the unknown symbols of one sum-rule
/// instance. Rows are ordered by ascending `m`, unknowns by ascending
/// doubled `f`; the serialization is deterministic.
#[derive(Clone, Debug, Serialize)]
pub struct IdentificationSystem {
    /// Fixed doubled spins, in the order `(a, b, d, e, c)`.
    pub fixed_spins: [u32; 5],
    pub basis_degree: u32,
    pub rows: Vec<SystemRow>,
}

impl IdentificationSystem {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serializes")
    }

    /// The unknowns' doubled spins, ascending.
    pub fn unknowns(&self) -> Vec<u32> {
        self.rows
            .first()
            .map(|r| r.unknown_coeffs_exact.keys().copied().collect())
            .unwrap_or_default()
    }
}

/// Builds the identification system for fixed `(a, b, d, e, c)`: one
/// equation per binomial basis element, whose unknowns are the symbol values
/// over the admissible `f` range. Plugging provider values into the system
/// reproduces the sum-rule residuals.
pub fn emit_identification_system(
    a: Spin,
    b: Spin,
    d: Spin,
    e: Spin,
    c: Spin,
) -> Result<IdentificationSystem> {
    let assembly = assemble_sum_rule(a, b, c, d, e)?;
    let mut rows = Vec::with_capacity(assembly.basis_degree as usize + 1);
    for m in 0..=assembly.basis_degree {
        let mut coeffs = BTreeMap::new();
        for (f, parts) in &assembly.terms {
            let value = parts
                .weight
                .mul_rational(&(parts.poly.coeff(m) * big(assembly.frontal_sign)));
            coeffs.insert(f.twice(), value);
        }
        let rhs = assembly
            .lhs
            .weight
            .mul_rational(&assembly.lhs.poly.coeff(m));
        rows.push(SystemRow {
            m,
            unknown_coeffs: coeffs.iter().map(|(k, v)| (*k, v.to_string())).collect(),
            rhs: rhs.to_string(),
            unknown_coeffs_exact: coeffs,
            rhs_exact: rhs,
        });
    }
    Ok(IdentificationSystem {
        fixed_spins: [a.twice(), b.twice(), d.twice(), e.twice(), c.twice()],
        basis_degree: assembly.basis_degree,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn row_count_is_basis_size() {
        let sys = emit_identification_system(s(1), s(1), s(1), s(1), s(1)).unwrap();
        assert_eq!(sys.rows.len(), sys.basis_degree as usize + 1);
    }

    #[test]
    fn unknown_count_is_f_range_size() {
        let sys = emit_identification_system(s(1), s(1), s(1), s(1), s(1)).unwrap();
        // f in [max(|b-d|,|a-e|), min(b+d, a+e)] in half steps: 0, 1/2, 1.
        assert_eq!(sys.unknowns(), vec![0, 1, 2]);
    }

    #[test]
    fn json_shape() {
        let sys = emit_identification_system(s(1), s(1), s(1), s(1), s(2)).unwrap();
        let json = sys.to_json();
        assert!(json.contains("\"fixed_spins\""));
        assert!(json.contains("\"basis_degree\""));
        assert!(json.contains("\"unknown_coeffs\""));
        assert!(json.contains("\"rhs\""));
    }
}
