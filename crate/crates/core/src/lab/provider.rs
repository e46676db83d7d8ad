use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exact::{is_triangle, Algebra, Decimal, ExactValue, Spin};
use crate::{Error, Result};

/// Key of a 6-j^S symbol `{a b c; d e f}`, stored as six doubled spins in
/// row-major order. Its four triads are `(a,b,c)`, `(c,d,e)`, `(b,d,f)`,
/// `(a,f,e)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SixJKey(pub [Spin; 6]);

impl SixJKey {
    pub fn from_twice(t: [u32; 6]) -> Self {
        SixJKey(t.map(Spin::from_twice))
    }

    pub fn twice(&self) -> [u32; 6] {
        self.0.map(|s| s.twice())
    }

    pub fn triads(&self) -> [[Spin; 3]; 4] {
        let [a, b, c, d, e, f] = self.0;
        [[a, b, c], [c, d, e], [b, d, f], [a, f, e]]
    }

    /// True iff all four triads are valid half-integral-perimeter triangles.
    pub fn is_triangular(&self) -> bool {
        self.triads()
            .into_iter()
            .all(|[x, y, z]| is_triangle(x, y, z, Algebra::Osp))
    }
}

impl fmt::Display for SixJKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, ff] = self.0;
        write!(f, "{{{a} {b} {c}; {d} {e} {ff}}}")
    }
}

impl fmt::Debug for SixJKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A provider-sourced symbol value: exact surd, or a decimal approximation
/// whose precision is whatever the source carried.
#[derive(Clone, Debug)]
pub enum ProvidedValue {
    Exact(ExactValue),
    Approx(BigRational),
}

impl ProvidedValue {
    pub fn is_exact(&self) -> bool {
        matches!(self, ProvidedValue::Exact(_))
    }

    pub fn to_decimal(&self, digits: u32) -> Decimal {
        match self {
            ProvidedValue::Exact(v) => v.to_decimal(digits),
            ProvidedValue::Approx(r) => Decimal::from_rational(r, digits),
        }
    }

    pub fn render(&self) -> String {
        match self {
            ProvidedValue::Exact(v) => v.to_string(),
            ProvidedValue::Approx(r) => Decimal::from_rational(r, 40).to_string(),
        }
    }
}

/// Where a provider's values come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Externally supplied table file.
    File,
    /// The experimental recoupling construction with its documented local
    /// phase convention (not the reference conventions).
    ExperimentalRecoupling,
    /// Values forced by closure composition on fully stretched keys.
    StretchedClosure,
}

/// Abstract source of 6-j^S values. Implementations must be safely shareable
/// for concurrent reads.
pub trait SixJSuperProvider: Send + Sync {
    /// The value for a key, or `None` when the source does not cover it.
    /// Non-triangular keys are exactly zero for every provider.
    fn get(&self, key: &SixJKey) -> Option<ProvidedValue>;

    fn provenance(&self) -> Provenance;

    /// Every key a table-backed source enumerates; `None` for on-demand
    /// sources.
    fn keys(&self) -> Option<Vec<SixJKey>> {
        None
    }
}

/// In-memory table provider; the base for file-backed tables and synthetic
/// test tables.
pub struct TableProvider {
    map: BTreeMap<[u32; 6], ProvidedValue>,
    provenance: Provenance,
}

impl TableProvider {
    pub fn new(provenance: Provenance) -> Self {
        TableProvider {
            map: BTreeMap::new(),
            provenance,
        }
    }

    pub fn insert(&mut self, key: SixJKey, value: ProvidedValue) {
        self.map.insert(key.twice(), value);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl SixJSuperProvider for TableProvider {
    fn get(&self, key: &SixJKey) -> Option<ProvidedValue> {
        if !key.is_triangular() {
            return Some(ProvidedValue::Exact(ExactValue::zero()));
        }
        self.map.get(&key.twice()).cloned()
    }

    fn provenance(&self) -> Provenance {
        self.provenance
    }

    fn keys(&self) -> Option<Vec<SixJKey>> {
        Some(self.map.keys().map(|k| SixJKey::from_twice(*k)).collect())
    }
}

/// Table provider loaded from the tab-separated symbol file format:
/// one row per symbol, six doubled spins then the value, `#` comments.
/// Values are `r/s`, `r/s*sqrt(p/q)` or a decimal string.
pub struct FileProvider {
    table: TableProvider,
}

impl FileProvider {
    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::Io(e.to_string()))?;
        let mut table = TableProvider::new(Provenance::File);
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::Io(e.to_string()))?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 7 {
                return Err(Error::Parse(format!(
                    "line {}: expected six doubled spins and a value, got {} fields",
                    lineno + 1,
                    fields.len()
                )));
            }
            let mut key = [0u32; 6];
            for (slot, field) in key.iter_mut().zip(&fields[..6]) {
                *slot = field.parse().map_err(|_| {
                    Error::Parse(format!("line {}: bad doubled spin {field}", lineno + 1))
                })?;
            }
            let value = parse_value(fields[6])
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            table.insert(SixJKey::from_twice(key), value);
        }
        Ok(FileProvider { table })
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

impl SixJSuperProvider for FileProvider {
    fn get(&self, key: &SixJKey) -> Option<ProvidedValue> {
        self.table.get(key)
    }

    fn provenance(&self) -> Provenance {
        Provenance::File
    }

    fn keys(&self) -> Option<Vec<SixJKey>> {
        self.table.keys()
    }
}

fn parse_value(s: &str) -> Result<ProvidedValue> {
    if s.contains("sqrt") || !s.contains('.') {
        return Ok(ProvidedValue::Exact(ExactValue::from_str(s)?));
    }
    // Decimal string: sign, digits, fractional part.
    let neg = s.starts_with('-');
    let body = s.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("bad decimal {s}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad decimal {s}")))?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let mut value = BigRational::new(numer, denom);
    if neg {
        value = -value;
    }
    Ok(ProvidedValue::Approx(value))
}

/// Writes a table to the symbol file format, rows sorted by key.
pub fn write_table(
    path: &Path,
    entries: impl IntoIterator<Item = (SixJKey, ProvidedValue)>,
) -> Result<()> {
    let mut rows: Vec<(SixJKey, ProvidedValue)> = entries.into_iter().collect();
    rows.sort_by_key(|(k, _)| k.twice());
    let mut out = std::fs::File::create(path).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "# 6-j^S table: 2a 2b 2c 2d 2e 2f value").map_err(|e| Error::Io(e.to_string()))?;
    for (key, value) in rows {
        let t = key.twice();
        writeln!(
            out,
            "{} {} {} {} {} {}\t{}",
            t[0],
            t[1],
            t[2],
            t[3],
            t[4],
            t[5],
            value.render()
        )
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(())
}

/// Half-step spin range `[lo, hi]` filtered by a predicate.
pub(crate) fn spin_range(lo: i64, hi: i64, keep: impl Fn(Spin) -> bool) -> Vec<Spin> {
    let mut out = Vec::new();
    let mut t = lo.max(0);
    while t <= hi {
        let s = Spin::from_twice(t as u32);
        if keep(s) {
            out.push(s);
        }
        t += 1;
    }
    out
}

/// Admissible `f` values of the sum rule at fixed `(a,b,d,e)`: triads
/// `(b,d,f)` and `(a,f,e)` both valid.
pub(crate) fn f_range(a: Spin, b: Spin, d: Spin, e: Spin) -> Vec<Spin> {
    let lo = (b.twice_i() - d.twice_i())
        .abs()
        .max((a.twice_i() - e.twice_i()).abs());
    let hi = (b.twice_i() + d.twice_i()).min(a.twice_i() + e.twice_i());
    spin_range(lo, hi, |f| {
        is_triangle(b, d, f, Algebra::Osp) && is_triangle(a, f, e, Algebra::Osp)
    })
}

/// Admissible middle arguments `x` of a pseudo-orthogonality family at fixed
/// `(a,b,d,e)`: triads `(a,b,x)` and `(x,d,e)` both valid.
pub(crate) fn x_range(a: Spin, b: Spin, d: Spin, e: Spin) -> Vec<Spin> {
    let lo = (a.twice_i() - b.twice_i())
        .abs()
        .max((d.twice_i() - e.twice_i()).abs());
    let hi = (a.twice_i() + b.twice_i()).min(d.twice_i() + e.twice_i());
    spin_range(lo, hi, |x| {
        is_triangle(a, b, x, Algebra::Osp) && is_triangle(x, d, e, Algebra::Osp)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn tsv_round_trip() {
        let dir = std::env::temp_dir().join("recoupling-table-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("table.tsv");
        let key = SixJKey::from_twice([1, 1, 2, 1, 1, 2]);
        let value = ProvidedValue::Exact(ExactValue::new(ratio(-1, 4), ratio(2, 1)));
        write_table(&path, vec![(key, value)]).unwrap();
        let provider = FileProvider::load(&path).unwrap();
        match provider.get(&key).unwrap() {
            ProvidedValue::Exact(v) => assert_eq!(v.to_string(), "-1/4*sqrt(2)"),
            other => panic!("expected exact value, got {other:?}"),
        }
    }

    #[test]
    fn decimal_values_parse() {
        let v = parse_value("-0.125").unwrap();
        match v {
            ProvidedValue::Approx(r) => assert_eq!(r, ratio(-1, 8)),
            other => panic!("expected approx, got {other:?}"),
        }
    }

    #[test]
    fn non_triangular_keys_are_zero() {
        let table = TableProvider::new(Provenance::File);
        let key = SixJKey::from_twice([0, 0, 4, 0, 0, 0]);
        match table.get(&key).unwrap() {
            ProvidedValue::Exact(v) => assert!(v.is_zero()),
            other => panic!("expected zero, got {other:?}"),
        }
    }
}
