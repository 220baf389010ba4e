//! Content-addressed result cache.

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
pub struct Entry {
    pub pass: bool,
    pub body: String,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn default_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os("FS_CACHE_DIR") {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("fs-basis"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("fs-basis"))
}

impl Cache {
    pub fn new(enabled: bool) -> Self {
        Cache { dir: if enabled { default_dir() } else { None } }
    }

    /// Key over the crate version and every input that shapes the output.
    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION"));
        for p in parts {
            h.update([0u8]);
            h.update(p.as_bytes());
        }
        format!("{:x}", h.finalize())
    }

    pub fn get(&self, key: &str) -> Option<Entry> {
        let path = self.dir.as_ref()?.join(format!("{key}.json"));
        let text = fs::read_to_string(path).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Failures to write are ignored; the cache is an optimization.
    pub fn put(&self, key: &str, entry: &Entry) {
        let Some(dir) = &self.dir else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        if let Ok(text) = serde_json::to_string(entry) {
            let tmp = dir.join(format!("{key}.tmp{}", std::process::id()));
            if fs::write(&tmp, text).is_ok() {
                let _ = fs::rename(&tmp, dir.join(format!("{key}.json")));
            }
        }
    }
}
