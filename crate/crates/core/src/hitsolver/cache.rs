//! On-disk basis cache.
//!
//! One file per `(n, d, generator bound, generator mode)`.  The first line is
//!
//! ```text
//! steenrod-hit-basis <format version> <sha256 of the payload, hex>
//! ```
//!
//! followed by a JSON payload holding the column-order tag, the kept
//! generators as `(i, exponent vector)` pairs, and each row as
//! `{pivot, bits, preimage}` with the bit vectors hex encoded (little-endian
//! 64-bit words).  Files from another format version, with a different order
//! tag, or failing the checksum are rejected.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::echelon::RowRecord;
use super::{BasisRow, GeneratorMode, ReducedBasis};
use crate::bits::BitVector;
use crate::f2poly::Monomial;

pub const FORMAT_VERSION: u32 = 1;
/// Names the column order of every stored bit vector.
pub const ORDER_TAG: &str = "graded-lex-x1-first";
const MAGIC: &str = "steenrod-hit-basis";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache format version {found}, expected {expected}")]
    VersionMismatch { found: String, expected: u32 },
    #[error("checksum mismatch in {0}")]
    Checksum(PathBuf),
    #[error("malformed cache entry {path}: {reason}")]
    Malformed { path: PathBuf, reason: String },
}

#[derive(Serialize, Deserialize)]
struct Payload {
    order: String,
    nvars: usize,
    degree: u32,
    max_sq: u32,
    mode: GeneratorMode,
    columns: usize,
    generators: Vec<(u32, Vec<u32>)>,
    rows: Vec<RowRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub bytes: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CacheInfo {
    pub dir: PathBuf,
    pub format_version: u32,
    pub entries: Vec<CacheEntry>,
}

#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        BasisCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize, d: u32, bound: u32, mode: GeneratorMode) -> PathBuf {
        self.dir
            .join(format!("{MAGIC}-n{n}-d{d}-k{bound}-{}.json", mode.tag()))
    }

    pub fn store(&self, basis: &ReducedBasis) -> Result<PathBuf, CacheError> {
        fs::create_dir_all(&self.dir).map_err(io_err(&self.dir))?;
        let payload = Payload {
            order: ORDER_TAG.to_string(),
            nvars: basis.nvars,
            degree: basis.degree,
            max_sq: basis.max_sq,
            mode: basis.mode,
            columns: basis.columns,
            generators: basis
                .generators
                .iter()
                .map(|(i, m)| (*i, m.exps().to_vec()))
                .collect(),
            rows: basis
                .rows
                .iter()
                .map(|r| RowRecord {
                    pivot: r.pivot,
                    bits: r.bits.to_hex(),
                    preimage: r.preimage.to_hex(),
                })
                .collect(),
        };
        let body = serde_json::to_string(&payload).expect("payload serializes");
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        let text = format!("{MAGIC} {FORMAT_VERSION} {digest}\n{body}");
        let path = self.path_for(basis.nvars, basis.degree, basis.max_sq, basis.mode);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))?;
        Ok(path)
    }

    /// `Ok(None)` when nothing is stored for the key.
    pub fn load(
        &self,
        n: usize,
        d: u32,
        bound: u32,
        mode: GeneratorMode,
    ) -> Result<Option<ReducedBasis>, CacheError> {
        let path = self.path_for(n, d, bound, mode);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path)(e)),
        };
        let malformed = |reason: &str| CacheError::Malformed {
            path: path.clone(),
            reason: reason.to_string(),
        };
        let (header, body) = text
            .split_once('\n')
            .ok_or_else(|| malformed("no header"))?;
        let mut fields = header.split(' ');
        if fields.next() != Some(MAGIC) {
            return Err(malformed("bad magic"));
        }
        let version = fields.next().ok_or_else(|| malformed("no version"))?;
        if version != FORMAT_VERSION.to_string() {
            return Err(CacheError::VersionMismatch {
                found: version.to_string(),
                expected: FORMAT_VERSION,
            });
        }
        let digest = fields.next().ok_or_else(|| malformed("no checksum"))?;
        if hex::encode(Sha256::digest(body.as_bytes())) != digest {
            return Err(CacheError::Checksum(path));
        }
        let p: Payload =
            serde_json::from_str(body).map_err(|e| malformed(&format!("json: {e}")))?;
        if p.order != ORDER_TAG {
            return Err(malformed("column order tag differs"));
        }
        if (p.nvars, p.degree, p.max_sq, p.mode) != (n, d, bound, mode) {
            return Err(malformed("key does not match file name"));
        }
        let generators = p
            .generators
            .into_iter()
            .map(|(i, e)| Monomial::new(e).map(|m| (i, m)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| malformed(&e.to_string()))?;
        if generators.iter().any(|(_, m)| m.nvars() != n) {
            return Err(malformed("generator in wrong ring"));
        }
        let mut rows = Vec::with_capacity(p.rows.len());
        for r in p.rows {
            let bits =
                BitVector::from_hex(p.columns, &r.bits).ok_or_else(|| malformed("row bits"))?;
            let preimage = BitVector::from_hex(p.columns, &r.preimage)
                .ok_or_else(|| malformed("row preimage"))?;
            if bits.first_one() != Some(r.pivot) {
                return Err(malformed("pivot is not the leading bit"));
            }
            if preimage.iter_ones().any(|g| g >= generators.len()) {
                return Err(malformed("preimage names a missing generator"));
            }
            rows.push(BasisRow {
                pivot: r.pivot,
                bits,
                preimage,
            });
        }
        if rows.windows(2).any(|w| w[0].pivot >= w[1].pivot) {
            return Err(malformed("rows not sorted by pivot"));
        }
        let mut basis = ReducedBasis {
            nvars: n,
            degree: d,
            max_sq: bound,
            mode,
            columns: p.columns,
            generators,
            rows,
            pivot_of: Vec::new(),
        };
        basis.rebuild_pivots();
        Ok(Some(basis))
    }

    pub fn info(&self) -> Result<CacheInfo, CacheError> {
        let mut entries = Vec::new();
        if self.dir.exists() {
            for e in fs::read_dir(&self.dir).map_err(io_err(&self.dir))? {
                let e = e.map_err(io_err(&self.dir))?;
                let name = e.file_name().to_string_lossy().into_owned();
                if name.starts_with(MAGIC) {
                    let bytes = e.metadata().map_err(io_err(&e.path()))?.len();
                    entries.push(CacheEntry { file: name, bytes });
                }
            }
        }
        entries.sort_by(|a, b| a.file.cmp(&b.file));
        Ok(CacheInfo {
            dir: self.dir.clone(),
            format_version: FORMAT_VERSION,
            entries,
        })
    }

    /// Remove every cache file; returns how many were removed.
    pub fn clear(&self) -> Result<usize, CacheError> {
        let info = self.info()?;
        for e in &info.entries {
            let p = self.dir.join(&e.file);
            fs::remove_file(&p).map_err(io_err(&p))?;
        }
        Ok(info.entries.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hitsolver::SolverConfig;

    fn basis(n: usize, d: u32) -> ReducedBasis {
        ReducedBasis::build(n, d, u32::MAX, &SolverConfig::default()).unwrap()
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        let b = basis(3, 10);
        assert!(cache
            .load(3, 10, b.max_sq(), GeneratorMode::PowersOfTwo)
            .unwrap()
            .is_none());
        cache.store(&b).unwrap();
        let back = cache
            .load(3, 10, b.max_sq(), GeneratorMode::PowersOfTwo)
            .unwrap()
            .unwrap();
        assert_eq!(back, b);
        assert_eq!(cache.info().unwrap().entries.len(), 1);
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.info().unwrap().entries.is_empty());
    }

    #[test]
    fn version_bump_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        let b = basis(2, 6);
        let path = cache.store(&b).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let bumped = text.replacen(
            &format!("{MAGIC} {FORMAT_VERSION} "),
            &format!("{MAGIC} 0 "),
            1,
        );
        fs::write(&path, bumped).unwrap();
        let err = cache.load(2, 6, b.max_sq(), b.mode).unwrap_err();
        assert!(matches!(err, CacheError::VersionMismatch { .. }));
    }

    #[test]
    fn corruption_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        let b = basis(2, 6);
        let path = cache.store(&b).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let corrupted = text.replacen("\"pivot\":0", "\"pivot\":1", 1);
        assert_ne!(corrupted, text);
        fs::write(&path, corrupted).unwrap();
        let err = cache.load(2, 6, b.max_sq(), b.mode).unwrap_err();
        assert!(matches!(err, CacheError::Checksum(_)));
    }
}
