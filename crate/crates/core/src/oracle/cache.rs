//! On-disk cache of oracle results.
//!
//! One plain-text file per `(variant, n, generator version)`:
//!
//! ```text
//! # lucky oracle cache
//! schema_version 1
//! generator_version 1
//! variant all
//! n 3
//! wall_time_seconds 0.000125
//! q
//! 8 5 3
//! 5 4 3
//! 3 2 3
//! counts
//! 2 8 6
//! checksum <sha256 hex>
//! ```
//!
//! The checksum covers every line except the comment, the wall time and
//! the checksum line itself, so two runs that computed the same numbers
//! agree on everything but their timing line. Files are written to a
//! temporary name in the same directory and renamed into place, so a
//! reader sees either a complete file or none.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use super::{LuckyDistribution, LuckyTable, OracleResult, Variant};
use crate::error::{Error, Result};
use crate::numeric::ExactInt;

pub const SCHEMA_VERSION: u32 = 1;

/// Bump whenever a change could alter any computed count.
pub const GENERATOR_VERSION: &str = "1";

const HEADER: &str = "# lucky oracle cache";

#[derive(Clone, Debug, PartialEq)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub variant: Variant,
    pub n: usize,
    pub q: Vec<Vec<ExactInt>>,
    pub counts: Vec<ExactInt>,
    pub generator_version: String,
    pub wall_time_seconds: f64,
}

impl CacheEntry {
    pub fn from_result(result: &OracleResult, wall_time_seconds: f64) -> Self {
        CacheEntry {
            schema_version: SCHEMA_VERSION,
            variant: result.table.variant,
            n: result.table.n,
            q: result.table.q.clone(),
            counts: result.distribution.counts.clone(),
            generator_version: GENERATOR_VERSION.to_string(),
            wall_time_seconds,
        }
    }

    pub fn table(&self) -> LuckyTable {
        LuckyTable {
            n: self.n,
            variant: self.variant,
            q: self.q.clone(),
        }
    }

    pub fn distribution(&self) -> LuckyDistribution {
        LuckyDistribution {
            n: self.n,
            variant: self.variant,
            counts: self.counts.clone(),
        }
    }

    /// Every line that depends only on the computed numbers.
    pub fn payload(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "schema_version {}", self.schema_version);
        let _ = writeln!(s, "generator_version {}", self.generator_version);
        let _ = writeln!(s, "variant {}", self.variant);
        let _ = writeln!(s, "n {}", self.n);
        s.push_str("q\n");
        for row in &self.q {
            s.push_str(&join(row));
            s.push('\n');
        }
        s.push_str("counts\n");
        s.push_str(&join(&self.counts));
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let payload = self.payload();
        let mut lines: Vec<&str> = payload.lines().collect();
        let wall = format!("wall_time_seconds {:.6}", self.wall_time_seconds);
        // timing goes after `n` so the header block stays together
        lines.insert(4, &wall);
        let mut s = String::new();
        s.push_str(HEADER);
        s.push('\n');
        for l in lines {
            s.push_str(l);
            s.push('\n');
        }
        let _ = writeln!(s, "checksum {}", checksum(&payload));
        s
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let corrupt = |reason: String| Error::CacheIntegrity {
            path: path.to_path_buf(),
            reason,
        };
        let mut lines = text.lines().filter(|l| !l.starts_with('#'));
        let mut field = |name: &str| -> Result<String> {
            let line = lines
                .next()
                .ok_or_else(|| corrupt(format!("missing {name}")))?;
            match line.split_once(' ') {
                Some((k, v)) if k == name => Ok(v.to_string()),
                None if line == name => Ok(String::new()),
                _ => Err(corrupt(format!("expected {name}, found {line:?}"))),
            }
        };
        let schema_version: u32 = field("schema_version")?
            .parse()
            .map_err(|_| corrupt("unreadable schema_version".into()))?;
        if schema_version != SCHEMA_VERSION {
            return Err(Error::CacheSchema {
                path: path.to_path_buf(),
                found: schema_version,
                expected: SCHEMA_VERSION,
            });
        }
        let generator_version = field("generator_version")?;
        let variant: Variant = field("variant")?
            .parse()
            .map_err(|_| corrupt("unknown variant".into()))?;
        let n: usize = field("n")?
            .parse()
            .map_err(|_| corrupt("unreadable n".into()))?;
        let wall_time_seconds: f64 = field("wall_time_seconds")?
            .parse()
            .map_err(|_| corrupt("unreadable wall_time_seconds".into()))?;
        field("q")?;
        drop(field);

        let mut lines = text.lines().filter(|l| !l.starts_with('#')).skip(6);
        let mut q = Vec::with_capacity(n);
        for _ in 0..n {
            let row = parse_row(lines.next(), n).map_err(corrupt)?;
            q.push(row);
        }
        if lines.next() != Some("counts") {
            return Err(corrupt("missing counts section".into()));
        }
        let counts = parse_row(lines.next(), n).map_err(corrupt)?;
        let stored = match lines.next().and_then(|l| l.strip_prefix("checksum ")) {
            Some(c) => c.to_string(),
            None => return Err(corrupt("missing checksum".into())),
        };
        if lines.next().is_some() {
            return Err(corrupt("trailing data after checksum".into()));
        }
        let entry = CacheEntry {
            schema_version,
            variant,
            n,
            q,
            counts,
            generator_version,
            wall_time_seconds,
        };
        if checksum(&entry.payload()) != stored {
            return Err(corrupt("checksum mismatch".into()));
        }
        Ok(entry)
    }
}

fn join(values: &[ExactInt]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_row(line: Option<&str>, n: usize) -> std::result::Result<Vec<ExactInt>, String> {
    let line = line.ok_or("truncated file")?;
    let row = line
        .split(' ')
        .map(|t| t.parse::<BigInt>().map_err(|_| format!("bad integer {t:?}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if row.len() != n {
        return Err(format!("row has {} entries, expected {n}", row.len()));
    }
    Ok(row)
}

fn checksum(payload: &str) -> String {
    Sha256::digest(payload.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A directory of cache files.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, variant: Variant, n: usize) -> PathBuf {
        self.dir
            .join(format!("lucky-{variant}-n{n}-g{GENERATOR_VERSION}.txt"))
    }

    pub fn store(&self, entry: &CacheEntry) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(entry.variant, entry.n);
        let mut tmp = tempfile::Builder::new()
            .prefix(".lucky-")
            .suffix(".tmp")
            .tempfile_in(&self.dir)?;
        tmp.write_all(entry.to_text().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
        Ok(path)
    }

    /// `Ok(None)` when nothing has been stored for the key.
    pub fn load(&self, variant: Variant, n: usize) -> Result<Option<CacheEntry>> {
        let path = self.path_for(variant, n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry = CacheEntry::parse(&text, &path)?;
        if entry.variant != variant || entry.n != n {
            return Err(Error::CacheIntegrity {
                path,
                reason: format!("holds {} n={}", entry.variant, entry.n),
            });
        }
        Ok(Some(entry))
    }
}

pub fn cache_store(cache: &Cache, entry: &CacheEntry) -> Result<PathBuf> {
    cache.store(entry)
}

pub fn cache_load(cache: &Cache, variant: Variant, n: usize) -> Result<Option<CacheEntry>> {
    cache.load(variant, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{run_oracle, OracleOptions};

    fn entry(n: usize, variant: Variant) -> CacheEntry {
        let r = run_oracle(n, variant, &OracleOptions::default()).unwrap();
        CacheEntry::from_result(&r, 0.25)
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let e = entry(7, Variant::All);
        cache.store(&e).unwrap();
        let back = cache.load(Variant::All, 7).unwrap().unwrap();
        assert_eq!(back, e);
        assert_eq!(back.table().get(4, 4), &BigInt::from(22788));
    }

    #[test]
    fn absent_before_store() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        assert!(cache.load(Variant::All, 5).unwrap().is_none());
    }

    #[test]
    fn schema_mismatch_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let path = cache.store(&entry(3, Variant::All)).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("schema_version 1", "schema_version 2")).unwrap();
        assert!(matches!(
            cache.load(Variant::All, 3),
            Err(Error::CacheSchema { found: 2, expected: 1, .. })
        ));
    }

    #[test]
    fn corruption_names_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let path = cache.store(&entry(4, Variant::WeaklyDecreasing)).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let tampered = text.replacen("\n1 ", "\n2 ", 1);
        assert_ne!(tampered, text);
        fs::write(&path, tampered).unwrap();
        let err = cache.load(Variant::WeaklyDecreasing, 4).unwrap_err();
        assert!(matches!(err, Error::CacheIntegrity { .. }));
        assert!(err.to_string().contains(path.file_name().unwrap().to_str().unwrap()));

        fs::write(&path, &text[..text.len() / 2]).unwrap();
        assert!(matches!(
            cache.load(Variant::WeaklyDecreasing, 4),
            Err(Error::CacheIntegrity { .. })
        ));
    }

    #[test]
    fn text_layout() {
        let text = entry(3, Variant::All).to_text();
        let expected_prefix = "# lucky oracle cache\nschema_version 1\ngenerator_version 1\nvariant all\nn 3\nwall_time_seconds 0.250000\nq\n8 5 3\n5 4 3\n3 2 3\ncounts\n2 8 6\nchecksum ";
        assert!(text.starts_with(expected_prefix), "{text}");
    }
}
