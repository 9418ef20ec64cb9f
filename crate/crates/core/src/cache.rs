//! Content-addressed on-disk memo of computed values.
//!
//! One JSON file per entry, named by the SHA-256 of the key text. Writes go
//! to a temporary file in the same directory and are renamed into place, so
//! readers never observe a partial entry and concurrent writers of the same
//! key converge on one valid file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "GBK_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub operation: String,
    pub input: String,
}

impl CacheKey {
    pub fn new(operation: impl Into<String>, input: impl Into<String>) -> Self {
        CacheKey {
            operation: operation.into(),
            input: input.into(),
        }
    }

    fn text(&self) -> String {
        format!("v{SCHEMA_VERSION}\n{}\n{}", self.operation, self.input)
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.text().as_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    schema: u32,
    operation: String,
    input: String,
    value: T,
}

#[derive(Debug)]
pub struct CacheStore {
    root: PathBuf,
    enabled: AtomicBool,
}

impl CacheStore {
    /// Open (creating if needed) a cache rooted at `root`. An unusable
    /// directory yields a disabled store.
    pub fn open(root: impl Into<PathBuf>) -> Self {
        let root = root.into();
        let enabled = match fs::create_dir_all(&root) {
            Ok(()) => true,
            Err(e) => {
                log::warn!("cache disabled: cannot create {}: {e}", root.display());
                false
            }
        };
        CacheStore {
            root,
            enabled: AtomicBool::new(enabled),
        }
    }

    /// `$GBK_CACHE_DIR`, else the platform cache directory.
    pub fn from_env() -> Self {
        CacheStore::open(default_root())
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled.load(Ordering::Relaxed)
    }

    fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.root.join(format!("{}.json", key.digest()))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        if !self.is_enabled() {
            return None;
        }
        let path = self.path_for(key);
        let bytes = fs::read(&path).ok()?;
        match serde_json::from_slice::<Entry<T>>(&bytes) {
            Ok(e) if e.schema == SCHEMA_VERSION && e.operation == key.operation && e.input == key.input => {
                Some(e.value)
            }
            Ok(_) => {
                log::debug!("cache entry {} has a different schema or key", path.display());
                None
            }
            Err(err) => {
                log::warn!("ignoring corrupt cache entry {}: {err}", path.display());
                None
            }
        }
    }

    pub fn put<T: Serialize>(&self, key: &CacheKey, value: &T) {
        if !self.is_enabled() {
            return;
        }
        if let Err(e) = self.try_put(key, value) {
            log::warn!("cache disabled: write to {} failed: {e}", self.root.display());
            self.enabled.store(false, Ordering::Relaxed);
        }
    }

    fn try_put<T: Serialize>(&self, key: &CacheKey, value: &T) -> std::io::Result<()> {
        let entry = Entry {
            schema: SCHEMA_VERSION,
            operation: key.operation.clone(),
            input: key.input.clone(),
            value,
        };
        let bytes = serde_json::to_vec_pretty(&entry)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.root)?;
        tmp.write_all(&bytes)?;
        tmp.flush()?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

fn default_root() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("gbk");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("gbk");
    }
    std::env::temp_dir().join("gbk-cache")
}
