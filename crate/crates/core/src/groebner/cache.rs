//! On-disk store of reduced Groebner bases.
//!
//! One file per basis, named by the SHA-256 of the request:
//!
//! ```text
//! fermat-groebner-cache v1
//! ring: x,y,z/grevlex/QQ
//! key: <hex digest>
//! count: 3
//! <one polynomial per line>
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, Poly, Ring};

const MAGIC: &str = "fermat-groebner-cache v1";

#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    write_lock: Mutex<()>,
}

impl DiskCache {
    /// Opens (creating if needed) a cache directory.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir, write_lock: Mutex::new(()) })
    }

    /// Directory from `FERMAT_CACHE_DIR`, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os("FERMAT_CACHE_DIR") {
            Some(d) if !d.is_empty() => Self::open(PathBuf::from(d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Digest identifying a computation: a label, the ring and the
    /// generators in text form.
    pub fn key(label: &str, ring: Ring, gens: &[Poly<Rational>]) -> String {
        let mut h = Sha256::new();
        h.update(format!("{MAGIC}\n{label}\n{}\n", ring.describe()));
        for g in gens {
            h.update(g.to_string());
            h.update("\n");
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.gb"))
    }

    /// Reads a stored basis. A missing file or a different format version is
    /// a miss; a malformed file is an error.
    pub fn load(&self, key: &str, ring: Ring) -> Result<Option<Vec<Poly<Rational>>>> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let bad = |message: String| Error::Cache { path: path.clone(), message };
        let mut lines = text.lines();
        if lines.next() != Some(MAGIC) {
            return Ok(None);
        }
        let mut field = |name: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| bad(format!("missing {name} line")))?;
            line.strip_prefix(&format!("{name}: "))
                .map(str::to_string)
                .ok_or_else(|| bad(format!("expected {name}, found {line:?}")))
        };
        let stored_ring = field("ring")?;
        if stored_ring != ring.describe() {
            return Err(bad(format!("ring {stored_ring} does not match {}", ring.describe())));
        }
        let stored_key = field("key")?;
        if stored_key != key {
            return Err(bad("key does not match file name".into()));
        }
        let count: usize = field("count")?.parse().map_err(|_| bad("bad count".into()))?;
        let polys = lines.map(|l| parse_poly(l, ring).map_err(|e| bad(e.to_string()))).collect::<Result<Vec<_>>>()?;
        if polys.len() != count {
            return Err(bad(format!("expected {count} polynomials, found {}", polys.len())));
        }
        Ok(Some(polys))
    }

    pub fn store(&self, key: &str, ring: Ring, polys: &[Poly<Rational>]) -> Result<()> {
        let mut body = format!("{MAGIC}\nring: {}\nkey: {key}\ncount: {}\n", ring.describe(), polys.len());
        for p in polys {
            body.push_str(&p.to_string());
            body.push('\n');
        }
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(body.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let ring = Ring::xyz();
        let polys = vec![Poly::parse_xyz("x^2 - 1/3*y*z").unwrap(), Poly::parse_xyz("z^5").unwrap()];
        let key = DiskCache::key("gb", ring, &polys);
        assert_eq!(cache.load(&key, ring).unwrap(), None);
        cache.store(&key, ring, &polys).unwrap();
        assert_eq!(cache.load(&key, ring).unwrap(), Some(polys));
    }

    #[test]
    fn version_mismatch_is_a_miss_and_garbage_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let ring = Ring::xyz();
        fs::write(dir.path().join("aa.gb"), "fermat-groebner-cache v0\n").unwrap();
        assert_eq!(cache.load("aa", ring).unwrap(), None);
        fs::write(dir.path().join("bb.gb"), format!("{MAGIC}\nring: x,y,z/grevlex/QQ\nkey: bb\ncount: 1\nx +\n"))
            .unwrap();
        assert!(matches!(cache.load("bb", ring), Err(Error::Cache { .. })));
    }

    #[test]
    fn keys_depend_on_generators() {
        let ring = Ring::xyz();
        let a = DiskCache::key("gb", ring, &[Poly::parse_xyz("x").unwrap()]);
        let b = DiskCache::key("gb", ring, &[Poly::parse_xyz("y").unwrap()]);
        assert_ne!(a, b);
        assert_eq!(a.len(), 64);
    }
}
