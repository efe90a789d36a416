use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Content-hash key over the verb, its canonical options and the library version.
pub fn cache_key(request: &serde_json::Value, version: &str) -> String {
    let mut h = Sha256::new();
    h.update(version.as_bytes());
    h.update([0]);
    h.update(request.to_string().as_bytes());
    hex::encode(h.finalize())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub version: String,
    pub created: u64,
    pub exit_code: i32,
    pub output: String,
}

/// Directory of cached outputs, one JSON file per key.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        Cache {
            dir: dir.as_ref().to_path_buf(),
        }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key).then_some(entry)
    }

    /// Writes to a temporary file and renames it into place.
    pub fn put(&self, key: &str, exit_code: i32, output: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            key: key.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            created: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            exit_code,
            output: output.into(),
        };
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&entry)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(key))
    }
}
