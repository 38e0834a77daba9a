//! Binary cache for the spf array.
//!
//! Layout: magic `SPF1`, little-endian u64 limit, then `limit + 1` raw
//! little-endian u32 entries (indices 0 and 1 hold 0 and 1). The cache
//! directory can also be set through the `HALASZ_LAB_CACHE` environment
//! variable; explicit `--sieve-cache` paths take precedence.

use anyhow::{bail, Context, Result};
use halasz_core::PrimeTable;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 4] = b"SPF1";

pub fn save(table: &PrimeTable, path: &Path) -> Result<()> {
    let f = std::fs::File::create(path)
        .with_context(|| format!("creating sieve cache {}", path.display()))?;
    let mut w = BufWriter::new(f);
    w.write_all(MAGIC)?;
    w.write_all(&table.limit().to_le_bytes())?;
    let mut buf = Vec::with_capacity(1 << 16);
    for chunk in table.spf_raw().chunks(1 << 14) {
        buf.clear();
        for &v in chunk {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

pub fn load(path: &Path) -> Result<PrimeTable> {
    let f = std::fs::File::open(path)
        .with_context(|| format!("opening sieve cache {}", path.display()))?;
    let mut r = BufReader::new(f);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        bail!("{} is not an SPF1 cache", path.display());
    }
    let mut lim = [0u8; 8];
    r.read_exact(&mut lim)?;
    let limit = u64::from_le_bytes(lim);
    if limit < 2 || limit >= u32::MAX as u64 {
        bail!("cache limit {limit} out of range");
    }
    let n = limit as usize + 1;
    let mut raw = vec![0u8; n * 4];
    r.read_exact(&mut raw)?;
    let mut spf = Vec::with_capacity(n);
    for c in raw.chunks_exact(4) {
        spf.push(u32::from_le_bytes([c[0], c[1], c[2], c[3]]));
    }
    Ok(PrimeTable::from_spf(limit, spf)?)
}

/// Default cache file location for a limit under `HALASZ_LAB_CACHE`.
pub fn env_cache_path(limit: u64) -> Option<PathBuf> {
    std::env::var_os("HALASZ_LAB_CACHE")
        .map(|dir| PathBuf::from(dir).join(format!("spf_{limit}.spf1")))
}

/// Load from the explicit path (or the env-var location) when present and
/// matching `limit`; otherwise sieve.
pub fn load_or_sieve(limit: u64, explicit: Option<&Path>) -> Result<PrimeTable> {
    let candidate = explicit
        .map(PathBuf::from)
        .or_else(|| env_cache_path(limit));
    if let Some(p) = candidate {
        if p.exists() {
            let t = load(&p)?;
            if t.limit() == limit {
                return Ok(t);
            }
        }
    }
    Ok(PrimeTable::sieve(limit)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("spf_1000.spf1");
        let t = PrimeTable::sieve(1000).unwrap();
        save(&t, &path).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(t.limit(), back.limit());
        assert_eq!(t.spf_raw(), back.spf_raw());
        assert_eq!(t.primes(), back.primes());
    }

    #[test]
    fn corrupt_magic_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.spf1");
        std::fs::write(&path, b"NOPExxxxxxxxxxxx").unwrap();
        assert!(load(&path).is_err());
    }
}
