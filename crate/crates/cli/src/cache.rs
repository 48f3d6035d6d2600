//! Content-addressed result cache. Each entry is one JSON file named by the
//! SHA-256 of its key and carrying the SHA-256 of its payload, so a
//! truncated or edited file is detected and recomputed.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub hash: String,
    pub payload: String,
}

impl CacheEntry {
    pub fn new(key: &str, payload: String) -> Self {
        CacheEntry {
            key: key.to_string(),
            hash: digest(&payload),
            payload,
        }
    }

    pub fn is_intact(&self) -> bool {
        self.hash == digest(&self.payload)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// An entry existed but failed its hash or key check.
    Corrupt,
    Disabled,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    /// `--cache-dir`, then `FGL_CACHE_DIR`, then the user cache directory.
    pub fn resolve(cli_dir: Option<PathBuf>, no_cache: bool) -> Self {
        if no_cache {
            return Cache::disabled();
        }
        let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
        let dir = cli_dir
            .or_else(|| env("FGL_CACHE_DIR"))
            .or_else(|| env("XDG_CACHE_HOME").map(|d| d.join("fgl-forge")))
            .or_else(|| env("HOME").map(|d| d.join(".cache").join("fgl-forge")));
        Cache { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", digest(key))))
    }

    pub fn load(&self, key: &str) -> (Option<String>, Lookup) {
        let Some(path) = self.path_for(key) else {
            return (None, Lookup::Disabled);
        };
        let Ok(text) = fs::read_to_string(&path) else {
            return (None, Lookup::Miss);
        };
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(e) if e.key == key && e.is_intact() => (Some(e.payload), Lookup::Hit),
            _ => {
                let _ = fs::remove_file(&path);
                (None, Lookup::Corrupt)
            }
        }
    }

    /// Writes through a temporary file so readers never see half an entry.
    pub fn store(&self, key: &str, payload: &str) -> io::Result<()> {
        let Some(path) = self.path_for(key) else {
            return Ok(());
        };
        let dir = path.parent().expect("entry path has a parent");
        fs::create_dir_all(dir)?;
        let entry = CacheEntry::new(key, payload.to_string());
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path)
    }

    /// Returns the cached payload or computes and stores it. Storage
    /// failures are reported on stderr and otherwise ignored.
    pub fn get_or_compute<E>(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<String, E>,
    ) -> Result<(String, Lookup), E> {
        let (hit, status) = self.load(key);
        if let Some(p) = hit {
            return Ok((p, status));
        }
        let payload = compute()?;
        if status != Lookup::Disabled {
            if let Err(e) = self.store(key, &payload) {
                eprintln!("warning: cache write failed for {key}: {e}");
            }
        }
        Ok((payload, status))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        cache.store("k", "payload").unwrap();
        assert_eq!(cache.load("k"), (Some("payload".to_string()), Lookup::Hit));
        assert_eq!(cache.load("other").1, Lookup::Miss);

        let path = cache.path_for("k").unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, &text[..text.len() / 2]).unwrap();
        assert_eq!(cache.load("k").1, Lookup::Corrupt);
        assert!(!path.exists());

        let (p, status) = cache.get_or_compute::<()>("k", || Ok("payload".into())).unwrap();
        assert_eq!((p.as_str(), status), ("payload", Lookup::Miss));
        assert_eq!(cache.load("k").1, Lookup::Hit);
    }

    #[test]
    fn tampered_payload_fails_the_hash() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        cache.store("k", "12").unwrap();
        let path = cache.path_for("k").unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("\"12\"", "\"13\"");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load("k").1, Lookup::Corrupt);
    }

    #[test]
    fn disabled_cache_always_computes() {
        let cache = Cache::disabled();
        let (_, status) = cache.get_or_compute::<()>("k", || Ok("x".into())).unwrap();
        assert_eq!(status, Lookup::Disabled);
    }
}
