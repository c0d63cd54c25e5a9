//! Disk cache for the tau table.
//!
//! Format: CSV with header `n,tau`, one row per 1 <= n <= N, tau as decimal
//! strings. The file name carries (format version, N), so a bump of either
//! invalidates old caches. The loader re-derives lambda and re-validates the
//! structural invariants before handing the table out.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::eigenform::EigenformTable;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

pub fn cache_file_name(n_max: u64) -> String {
    format!("tau-v{FORMAT_VERSION}-n{n_max}.csv")
}

/// Write the table to `dir`, returning the file path.
pub fn save(table: &EigenformTable, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(cache_file_name(table.n_max()));
    let tmp = dir.join(format!("{}.tmp", cache_file_name(table.n_max())));
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        writeln!(w, "n,tau")?;
        for n in 1..=table.n_max() {
            writeln!(w, "{n},{}", table.tau(n))?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Load a cached table for exactly `n_max`, if present. Returns
/// `Ok(None)` when no cache file exists; any malformed or invalid file is an
/// error rather than a silent rebuild.
pub fn load(dir: &Path, n_max: u64) -> Result<Option<EigenformTable>> {
    let path = dir.join(cache_file_name(n_max));
    let file = match fs::File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let reader = BufReader::new(file);
    let mut lines = reader.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim() == "n,tau" => {}
        _ => return Err(Error::CacheInvalid("missing `n,tau` header".into())),
    }
    let mut tau = Vec::with_capacity(n_max as usize + 1);
    tau.push(0i128);
    for (i, line) in lines.enumerate() {
        let line = line?;
        let row = line.trim();
        if row.is_empty() {
            continue;
        }
        let (n_str, tau_str) = row
            .split_once(',')
            .ok_or_else(|| Error::CacheInvalid(format!("bad row {}", i + 2)))?;
        let n: u64 = n_str
            .parse()
            .map_err(|_| Error::CacheInvalid(format!("bad index in row {}", i + 2)))?;
        if n != (i + 1) as u64 {
            return Err(Error::CacheInvalid(format!(
                "rows out of order at row {}",
                i + 2
            )));
        }
        let t: i128 = tau_str
            .parse()
            .map_err(|_| Error::CacheInvalid(format!("bad tau in row {}", i + 2)))?;
        tau.push(t);
    }
    if tau.len() as u64 != n_max + 1 {
        return Err(Error::CacheInvalid(format!(
            "expected {n_max} rows, found {}",
            tau.len() - 1
        )));
    }
    let table = EigenformTable::from_tau(n_max, tau);
    table.validate()?;
    Ok(Some(table))
}

/// Load from `dir` when possible, otherwise build and (best-effort) save.
pub fn load_or_build(dir: Option<&Path>, n_max: u64) -> Result<EigenformTable> {
    if let Some(dir) = dir {
        if let Some(table) = load(dir, n_max)? {
            return Ok(table);
        }
        let table = EigenformTable::build(n_max)?;
        save(&table, dir)?;
        return Ok(table);
    }
    EigenformTable::build(n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp_dir(tag: &str) -> PathBuf {
        let dir =
            std::env::temp_dir().join(format!("hecke-lab-cache-test-{tag}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn roundtrip() {
        let dir = tmp_dir("roundtrip");
        let table = EigenformTable::build(300).unwrap();
        let path = save(&table, &dir).unwrap();
        assert_eq!(
            path.file_name().unwrap().to_str().unwrap(),
            "tau-v1-n300.csv"
        );
        let loaded = load(&dir, 300).unwrap().expect("cache hit");
        assert_eq!(loaded.n_max(), 300);
        for n in 1..=300 {
            assert_eq!(loaded.tau(n), table.tau(n));
            assert_eq!(loaded.lambda(n), table.lambda(n));
        }
        // A different N is a miss, not an error.
        assert!(load(&dir, 301).unwrap().is_none());
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn rejects_tampered_file() {
        let dir = tmp_dir("tamper");
        let table = EigenformTable::build(120).unwrap();
        let path = save(&table, &dir).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        // Flip tau(6): breaks multiplicativity, caught by validate().
        let bad = text.replace("6,-6048", "6,-6049");
        assert_ne!(bad, text);
        fs::write(&path, bad).unwrap();
        assert!(load(&dir, 120).is_err());
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn load_or_build_populates_cache() {
        let dir = tmp_dir("populate");
        let t = load_or_build(Some(&dir), 150).unwrap();
        assert_eq!(t.n_max(), 150);
        assert!(dir.join(cache_file_name(150)).exists());
        let again = load_or_build(Some(&dir), 150).unwrap();
        assert_eq!(again.tau(149), t.tau(149));
        let _ = fs::remove_dir_all(&dir);
    }
}
