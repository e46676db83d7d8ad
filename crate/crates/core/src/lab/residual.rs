use num_rational::BigRational;

use crate::exact::{
    big, factorial, int_part_of_twice, is_triangle, parity_sign, Algebra, Decimal, ExactValue,
    Spin, SurdSum,
};
use crate::osp::{supertriangle_bracketed, BiHomPoly};
use crate::{Error, Result};

use super::provider::{f_range, x_range, ProvidedValue, SixJKey, SixJSuperProvider};
use super::rpoly::{closure_poly, gamma_product};

/// One multiplicative side (or term) of the identification: an exact scalar
/// weight times a homogeneous polynomial in `(u, v)`.
#[derive(Clone, Debug)]
pub(crate) struct TermParts {
    pub weight: ExactValue,
    pub poly: BiHomPoly,
}

/// The preliminary sum rule at fixed `(a,b,c,d,e)`, fully assembled over the
/// binomial basis: the left-hand side, the per-`f` coefficients multiplying
/// the unknown symbols, and the common basis degree.
#[derive(Clone, Debug)]
pub(crate) struct Assembly {
    pub lhs: TermParts,
    /// The frontal right-hand phase `(-1)^([a+b+c]+[c+d+e]+2c)`.
    pub frontal_sign: i64,
    /// Per-`f` parts, excluding the frontal phase and the unknown symbol.
    pub terms: Vec<(Spin, TermParts)>,
    pub basis_degree: u32,
}

fn triad_parts(x: Spin, y: Spin, z: Spin) -> (i64, BigRational, ExactValue, BiHomPoly) {
    // For a triad contributing (phase, factorial weight numerator piece,
    // supertriangle, chain * closure polynomial): the assembly multiplies
    // two of these per side.
    let sup3 = x.max(y).max(z);
    let tau_perim = (x.twice_i() + y.twice_i() + z.twice_i()).rem_euclid(2);
    let phase_exp = sup3.twice_i() * tau_perim;
    let fw = BigRational::from_integer(factorial(sup3.twice_i()));
    let tri = supertriangle_bracketed(x, y, z)
        .expect("valid triad")
        .delta;
    let chain = gamma_product(sup3, Spin::from_twice(z.twice() + 1)).to_poly();
    let poly = chain.mul(&closure_poly(x, y, z));
    (phase_exp, fw, tri, poly)
}

pub(crate) fn assemble_sum_rule(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin) -> Result<Assembly> {
    if !is_triangle(a, b, c, Algebra::Osp) {
        return Err(Error::TriangleViolation(a, b, c));
    }
    if !is_triangle(c, d, e, Algebra::Osp) {
        return Err(Error::TriangleViolation(c, d, e));
    }

    let (ph1, fw1, tri1, poly1) = triad_parts(a, b, c);
    let (ph2, fw2, tri2, poly2) = triad_parts(c, d, e);
    let lhs_poly = poly1.mul(&poly2);
    let lhs_weight = tri1
        .mul(&tri2)
        .mul_rational(&(fw1 * fw2 / BigRational::from_integer(factorial(c.twice_i()))))
        .mul_rational(&big(parity_sign(ph1 + ph2)));
    let lhs = TermParts {
        weight: lhs_weight,
        poly: lhs_poly,
    };

    let frontal_sign = parity_sign(
        int_part_of_twice(a.twice_i() + b.twice_i() + c.twice_i())
            + int_part_of_twice(c.twice_i() + d.twice_i() + e.twice_i())
            + c.twice_i(),
    );

    let mut terms = Vec::new();
    for f in f_range(a, b, d, e) {
        let (ph1, fw1, tri1, poly1) = triad_parts(b, d, f);
        let (ph2, fw2, tri2, poly2) = triad_parts(a, f, e);
        let poly = poly1.mul(&poly2);
        let weight = tri1
            .mul(&tri2)
            .mul_rational(&(fw1 * fw2 / BigRational::from_integer(factorial(f.twice_i()))))
            .mul_rational(&big(parity_sign(ph1 + ph2)));
        debug_assert_eq!(poly.degree(), lhs.poly.degree(), "degree bookkeeping");
        debug_assert_eq!(poly.d0_parity(), lhs.poly.d0_parity(), "parity bookkeeping");
        terms.push((f, TermParts { weight, poly }));
    }

    let basis_degree = lhs.poly.degree();
    Ok(Assembly {
        lhs,
        frontal_sign,
        terms,
        basis_degree,
    })
}

/// Per-binomial residual of the preliminary sum rule: exact surds when every
/// provider value is exact and each slot's radicands group, otherwise
/// decimals at the requested precision.
#[derive(Clone, Debug)]
pub enum ResidualVector {
    Exact(Vec<ExactValue>),
    Decimal(Vec<Decimal>),
}

impl ResidualVector {
    pub fn len(&self) -> usize {
        match self {
            ResidualVector::Exact(v) => v.len(),
            ResidualVector::Decimal(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exactly_zero(&self) -> bool {
        match self {
            ResidualVector::Exact(v) => v.iter().all(|x| x.is_zero()),
            ResidualVector::Decimal(_) => false,
        }
    }

    /// True when every entry is exactly zero or below `10^-tol_exponent`.
    pub fn within_tolerance(&self, tol_exponent: u32) -> bool {
        match self {
            ResidualVector::Exact(v) => v.iter().all(|x| x.is_zero()),
            ResidualVector::Decimal(v) => v.iter().all(|x| x.within_tolerance(tol_exponent)),
        }
    }

    pub fn render(&self) -> Vec<String> {
        match self {
            ResidualVector::Exact(v) => v.iter().map(|x| x.to_string()).collect(),
            ResidualVector::Decimal(v) => v.iter().map(|x| x.to_string()).collect(),
        }
    }
}

fn provider_values(
    provider: &dyn SixJSuperProvider,
    a: Spin,
    b: Spin,
    c: Spin,
    d: Spin,
    e: Spin,
    fs: &[(Spin, TermParts)],
) -> Result<Vec<ProvidedValue>> {
    fs.iter()
        .map(|(f, _)| {
            let key = SixJKey([a, b, c, d, e, *f]);
            provider
                .get(&key)
                .ok_or(Error::MissingProviderEntry(a, b, c, d, e, *f))
        })
        .collect()
}

/// Evaluates both sides of the preliminary sum rule at `(a,b,c,d,e)` with
/// symbol values from `provider`, expands them over the binomial basis, and
/// returns the coefficient-wise residual `LHS - RHS`.
pub fn residual_delta_sum_rule(
    a: Spin,
    b: Spin,
    c: Spin,
    d: Spin,
    e: Spin,
    provider: &dyn SixJSuperProvider,
    digits: u32,
) -> Result<ResidualVector> {
    let assembly = assemble_sum_rule(a, b, c, d, e)?;
    let values = provider_values(provider, a, b, c, d, e, &assembly.terms)?;
    let all_exact = values.iter().all(|v| v.is_exact());

    if all_exact {
        let mut exact = Vec::with_capacity(assembly.basis_degree as usize + 1);
        let mut collapsed = true;
        'outer: for m in 0..=assembly.basis_degree {
            let mut acc = SurdSum::zero();
            acc.add_value(&assembly.lhs.weight.mul_rational(&assembly.lhs.poly.coeff(m)));
            for ((_f, parts), value) in assembly.terms.iter().zip(&values) {
                let x = match value {
                    ProvidedValue::Exact(x) => x,
                    ProvidedValue::Approx(_) => unreachable!(),
                };
                let term = parts
                    .weight
                    .mul(x)
                    .mul_rational(&(parts.poly.coeff(m) * big(-assembly.frontal_sign)));
                acc.add_value(&term);
            }
            match acc.collapse() {
                Some(v) => exact.push(v),
                None => {
                    collapsed = false;
                    break 'outer;
                }
            }
        }
        if collapsed {
            return Ok(ResidualVector::Exact(exact));
        }
    }

    let mut decimals = Vec::with_capacity(assembly.basis_degree as usize + 1);
    for m in 0..=assembly.basis_degree {
        let mut acc = assembly
            .lhs
            .weight
            .mul_rational(&assembly.lhs.poly.coeff(m))
            .to_decimal(digits);
        for ((_f, parts), value) in assembly.terms.iter().zip(&values) {
            let coeff = parts
                .weight
                .mul_rational(&(parts.poly.coeff(m) * big(-assembly.frontal_sign)))
                .to_decimal(digits);
            acc = acc.add(&coeff.mul(&value.to_decimal(digits)));
        }
        decimals.push(acc);
    }
    Ok(ResidualVector::Decimal(decimals))
}

/// Status of one pseudo-orthogonality pair `(f, f')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrthoStatus {
    Pass,
    Fail,
    Incomplete,
}

#[derive(Clone, Debug)]
pub struct OrthoRow {
    pub f: Spin,
    pub f_prime: Spin,
    pub status: OrthoStatus,
    /// Contraction value and expectation, rendered; on failure the term
    /// breakdown over the middle argument is included.
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub fixed: [Spin; 4],
    pub rows: Vec<OrthoRow>,
}

impl OrthogonalityReport {
    /// True when no complete pair fails.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != OrthoStatus::Fail)
    }

    pub fn complete_pairs(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.status != OrthoStatus::Incomplete)
            .count()
    }
}

/// Checks the pseudo-orthogonality relation
///
/// `sum_x (-1)^([a+b+x]+[d+e+x]+2x) {a b x; d e f} {a b x; d e f'}
///   = (-1)^([a+e+f]+[b+d+f]+2f) delta_(f,f')`
///
/// over every `(f, f')` pair of the family fixed by `(a,b,d,e)`. Pairs with
/// missing symbols are reported incomplete, not failed.
pub fn orthogonality_check(
    provider: &dyn SixJSuperProvider,
    a: Spin,
    b: Spin,
    d: Spin,
    e: Spin,
    digits: u32,
    tol_exponent: u32,
) -> OrthogonalityReport {
    let xs = x_range(a, b, d, e);
    let fs = f_range(a, b, d, e);
    let mut rows = Vec::new();
    for &f in &fs {
        for &fp in &fs {
            let mut values = Vec::new();
            let mut missing = false;
            for &x in &xs {
                let kf = provider.get(&SixJKey([a, b, x, d, e, f]));
                let kfp = provider.get(&SixJKey([a, b, x, d, e, fp]));
                match (kf, kfp) {
                    (Some(vf), Some(vfp)) => values.push((x, vf, vfp)),
                    _ => {
                        missing = true;
                        break;
                    }
                }
            }
            if missing {
                rows.push(OrthoRow {
                    f,
                    f_prime: fp,
                    status: OrthoStatus::Incomplete,
                    detail: "missing symbols".to_string(),
                });
                continue;
            }
            let expected_sign = parity_sign(
                int_part_of_twice(a.twice_i() + e.twice_i() + f.twice_i())
                    + int_part_of_twice(b.twice_i() + d.twice_i() + f.twice_i())
                    + f.twice_i(),
            );
            let expected = if f == fp { big(expected_sign) } else { big(0) };

            let weight = |x: Spin| {
                parity_sign(
                    int_part_of_twice(a.twice_i() + b.twice_i() + x.twice_i())
                        + int_part_of_twice(d.twice_i() + e.twice_i() + x.twice_i())
                        + x.twice_i(),
                )
            };

            let all_exact = values.iter().all(|(_, v1, v2)| v1.is_exact() && v2.is_exact());
            let (pass, lhs_str) = if all_exact {
                let mut acc = SurdSum::zero();
                for (x, v1, v2) in &values {
                    let (e1, e2) = match (v1, v2) {
                        (ProvidedValue::Exact(e1), ProvidedValue::Exact(e2)) => (e1, e2),
                        _ => unreachable!(),
                    };
                    acc.add_value(&e1.mul(e2).mul_rational(&big(weight(*x))));
                }
                match acc.collapse() {
                    Some(v) => (
                        v == ExactValue::from_rational(expected.clone()),
                        v.to_string(),
                    ),
                    None => {
                        let dec = acc.to_decimal(digits);
                        let diff = dec.sub(&Decimal::from_rational(&expected, digits));
                        (diff.within_tolerance(tol_exponent), dec.to_string())
                    }
                }
            } else {
                let mut acc = Decimal::zero(digits);
                for (x, v1, v2) in &values {
                    let term = v1
                        .to_decimal(digits)
                        .mul(&v2.to_decimal(digits))
                        .mul_rational(&big(weight(*x)));
                    acc = acc.add(&term);
                }
                let diff = acc.sub(&Decimal::from_rational(&expected, digits));
                (diff.within_tolerance(tol_exponent), acc.to_string())
            };

            let detail = if pass {
                format!("sum = {lhs_str}, expected {expected}")
            } else {
                let terms: Vec<String> = values
                    .iter()
                    .map(|(x, v1, v2)| format!("x={x}: {} * {}", v1.render(), v2.render()))
                    .collect();
                format!(
                    "sum = {lhs_str}, expected {expected}; terms: [{}]",
                    terms.join(", ")
                )
            };
            rows.push(OrthoRow {
                f,
                f_prime: fp,
                status: if pass { OrthoStatus::Pass } else { OrthoStatus::Fail },
                detail,
            });
        }
    }
    OrthogonalityReport {
        fixed: [a, b, d, e],
        rows,
    }
}

/// One binomial slot of the contraction-invariance comparison.
#[derive(Clone, Debug)]
pub struct InvarianceRow {
    pub m: u32,
    pub contracted: Decimal,
    pub telescoped: Decimal,
}

/// Applies the pseudo-orthogonality contraction over the middle argument to
/// the left-hand side of the sum rule and compares it, slot by slot, with
/// the single surviving right-hand term. For a table passing the
/// orthogonality check and satisfying the sum rule this reproduces the same
/// analytical form; both sides are reported so a provider-phase mismatch can
/// be told apart from a structural residual.
pub fn contraction_invariance_check(
    provider: &dyn SixJSuperProvider,
    a: Spin,
    b: Spin,
    d: Spin,
    e: Spin,
    f_prime: Spin,
    digits: u32,
) -> Result<Vec<InvarianceRow>> {
    let cs = x_range(a, b, d, e);
    if cs.is_empty() {
        return Err(Error::OutOfRange(format!(
            "no admissible middle argument for ({a}, {b}; {d}, {e})"
        )));
    }

    let mut contracted: Option<Vec<Decimal>> = None;
    let mut telescoped: Option<Vec<Decimal>> = None;

    for &c in &cs {
        let assembly = assemble_sum_rule(a, b, c, d, e)?;
        let degree = assembly.basis_degree as usize;
        let slots = contracted.get_or_insert_with(|| vec![Decimal::zero(digits); degree + 1]);
        if slots.len() != degree + 1 {
            return Err(Error::OutOfRange(
                "basis degree varies across the contraction range".into(),
            ));
        }

        let x_val = provider
            .get(&SixJKey([a, b, c, d, e, f_prime]))
            .ok_or(Error::MissingProviderEntry(a, b, c, d, e, f_prime))?
            .to_decimal(digits);
        let weight = parity_sign(
            int_part_of_twice(a.twice_i() + b.twice_i() + c.twice_i())
                + int_part_of_twice(d.twice_i() + e.twice_i() + c.twice_i())
                + c.twice_i(),
        );
        // Move the frontal right-hand phase onto the left-hand side before
        // contracting.
        let scale = big(weight * assembly.frontal_sign);
        for m in 0..=assembly.basis_degree {
            let lhs_m = assembly
                .lhs
                .weight
                .mul_rational(&(assembly.lhs.poly.coeff(m) * &scale))
                .to_decimal(digits)
                .mul(&x_val);
            slots[m as usize] = slots[m as usize].add(&lhs_m);
        }

        if telescoped.is_none() {
            let sign = parity_sign(
                int_part_of_twice(a.twice_i() + e.twice_i() + f_prime.twice_i())
                    + int_part_of_twice(b.twice_i() + d.twice_i() + f_prime.twice_i())
                    + f_prime.twice_i(),
            );
            let term = assembly
                .terms
                .iter()
                .find(|(f, _)| *f == f_prime)
                .ok_or_else(|| {
                    Error::OutOfRange(format!("{f_prime} is not in the admissible range"))
                })?;
            telescoped = Some(
                (0..=assembly.basis_degree)
                    .map(|m| {
                        term.1
                            .weight
                            .mul_rational(&(term.1.poly.coeff(m) * big(sign)))
                            .to_decimal(digits)
                    })
                    .collect(),
            );
        }
    }

    let contracted = contracted.unwrap();
    let telescoped = telescoped.unwrap();
    Ok(contracted
        .into_iter()
        .zip(telescoped)
        .enumerate()
        .map(|(m, (c, t))| InvarianceRow {
            m: m as u32,
            contracted: c,
            telescoped: t,
        })
        .collect())
}
