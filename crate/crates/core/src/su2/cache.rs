use std::io::{Read, Write};
use std::path::Path;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use once_cell::sync::Lazy;

use crate::exact::ExactValue;
use crate::{Error, Result};

/// Shared 6-j memo cache: concurrent reads, atomic insertion. Keys are
/// canonical symmetry representatives, so entries are convention-independent
/// exact values.
pub(crate) static SIXJ_CACHE: Lazy<DashMap<[u32; 6], ExactValue>> = Lazy::new(DashMap::new);

pub fn sixj_cache_len() -> usize {
    SIXJ_CACHE.len()
}

const CACHE_MAGIC: &[u8; 4] = b"RC6J";
const CACHE_VERSION: u32 = 1;

fn write_bigint(out: &mut Vec<u8>, n: &BigInt) {
    let (sign, bytes) = n.to_bytes_le();
    let signed: u8 = match sign {
        num_bigint::Sign::Minus => 2,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    };
    out.push(signed);
    out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
    out.extend_from_slice(&bytes);
}

fn read_bigint(buf: &[u8], pos: &mut usize) -> Result<BigInt> {
    let err = || Error::Io("truncated cache file".into());
    let sign = *buf.get(*pos).ok_or_else(err)?;
    *pos += 1;
    let len = u32::from_le_bytes(
        buf.get(*pos..*pos + 4)
            .ok_or_else(err)?
            .try_into()
            .unwrap(),
    ) as usize;
    *pos += 4;
    let bytes = buf.get(*pos..*pos + len).ok_or_else(err)?;
    *pos += len;
    let sign = match sign {
        2 => num_bigint::Sign::Minus,
        0 => num_bigint::Sign::NoSign,
        _ => num_bigint::Sign::Plus,
    };
    Ok(BigInt::from_bytes_le(sign, bytes))
}

/// Persist the 6-j cache to a versioned binary file. Entries are written in
/// sorted key order so identical caches serialize byte-identically.
pub fn save_sixj_cache(path: &Path) -> Result<usize> {
    let mut entries: Vec<([u32; 6], ExactValue)> = SIXJ_CACHE
        .iter()
        .map(|kv| (*kv.key(), kv.value().clone()))
        .collect();
    entries.sort_by_key(|(k, _)| *k);

    let mut out = Vec::new();
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    out.extend_from_slice(&(entries.len() as u64).to_le_bytes());
    for (key, value) in &entries {
        for k in key {
            out.extend_from_slice(&k.to_le_bytes());
        }
        write_bigint(&mut out, value.coeff().numer());
        write_bigint(&mut out, value.coeff().denom());
        write_bigint(&mut out, value.radicand());
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::Io(e.to_string()))?;
    file.write_all(&out).map_err(|e| Error::Io(e.to_string()))?;
    Ok(entries.len())
}

/// Load a cache file produced by [`save_sixj_cache`]. A version mismatch is
/// an error; loaded entries merge into the live cache.
pub fn load_sixj_cache(path: &Path) -> Result<usize> {
    let mut buf = Vec::new();
    std::fs::File::open(path)
        .map_err(|e| Error::Io(e.to_string()))?
        .read_to_end(&mut buf)
        .map_err(|e| Error::Io(e.to_string()))?;
    if buf.len() < 16 || &buf[0..4] != CACHE_MAGIC {
        return Err(Error::Io("not a 6-j cache file".into()));
    }
    let version = u32::from_le_bytes(buf[4..8].try_into().unwrap());
    if version != CACHE_VERSION {
        return Err(Error::Io(format!(
            "cache format version {version}, expected {CACHE_VERSION}"
        )));
    }
    let count = u64::from_le_bytes(buf[8..16].try_into().unwrap()) as usize;
    let mut pos = 16usize;
    for _ in 0..count {
        let err = || Error::Io("truncated cache file".into());
        let mut key = [0u32; 6];
        for k in key.iter_mut() {
            *k = u32::from_le_bytes(buf.get(pos..pos + 4).ok_or_else(err)?.try_into().unwrap());
            pos += 4;
        }
        let numer = read_bigint(&buf, &mut pos)?;
        let denom = read_bigint(&buf, &mut pos)?;
        let radicand = read_bigint(&buf, &mut pos)?;
        let value = ExactValue::new(
            BigRational::new(numer, denom),
            BigRational::from_integer(radicand),
        );
        SIXJ_CACHE.insert(key, value);
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Spin;

    #[test]
    fn cache_round_trip() {
        let s = |t: u32| Spin::from_twice(t);
        let v = super::super::sixj(s(2), s(2), s(2), s(2), s(2), s(2));
        let dir = std::env::temp_dir().join("recoupling-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sixj.bin");
        let saved = save_sixj_cache(&path).unwrap();
        assert!(saved >= 1);
        SIXJ_CACHE.clear();
        let loaded = load_sixj_cache(&path).unwrap();
        assert_eq!(loaded, saved);
        assert_eq!(super::super::sixj(s(2), s(2), s(2), s(2), s(2), s(2)), v);
    }
}
