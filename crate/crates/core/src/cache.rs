//! Content-addressed cache of expensive computations (class data and
//! character tables). Keys are SHA-256 digests of the group bytes, the
//! partition spec and a command version; payloads carry their own digest
//! and a mismatch triggers recomputation with a warning instead of an
//! error.

use crate::error::Result;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

pub const CACHE_VERSION: &str = "grouppoly-cache-v1";

pub fn digest_hex(parts: &[&[u8]]) -> String {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update((p.len() as u64).to_le_bytes());
        hasher.update(p);
    }
    let out = hasher.finalize();
    out.iter().map(|b| format!("{:02x}", b)).collect()
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn key(group_bytes: &[u8], partition_spec: &str, command: &str) -> String {
        digest_hex(&[
            CACHE_VERSION.as_bytes(),
            group_bytes,
            partition_spec.as_bytes(),
            command.as_bytes(),
        ])
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", key)))
    }

    /// Fetch a cached payload; None on miss. A digest mismatch is treated
    /// as a miss after warning on stderr.
    pub fn load(&self, key: &str) -> Option<Value> {
        let path = self.path_for(key)?;
        let text = fs::read_to_string(&path).ok()?;
        let wrapper: Value = serde_json::from_str(&text).ok()?;
        let payload = wrapper.get("payload")?;
        let stored = wrapper.get("payload_sha256")?.as_str()?;
        let recomputed = digest_hex(&[payload.to_string().as_bytes()]);
        if stored != recomputed {
            eprintln!(
                "warning: cache entry {} failed its digest check; recomputing",
                path.display()
            );
            return None;
        }
        Some(payload.clone())
    }

    /// Store a payload atomically (temp file then rename).
    pub fn store(&self, key: &str, payload: &Value) -> Result<()> {
        let Some(path) = self.path_for(key) else {
            return Ok(());
        };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let wrapper = serde_json::json!({
            "version": CACHE_VERSION,
            "key": key,
            "payload_sha256": digest_hex(&[payload.to_string().as_bytes()]),
            "payload": payload,
        });
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&wrapper).unwrap().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_corruption() {
        let dir =
            std::env::temp_dir().join(format!("grouppoly-cache-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let cache = Cache::new(Some(dir.clone()));
        let key = Cache::key(b"group-bytes", "trivial", "chartable");
        assert!(cache.load(&key).is_none());
        let payload = serde_json::json!({"degrees": [1, 1, 2]});
        cache.store(&key, &payload).unwrap();
        assert_eq!(cache.load(&key), Some(payload.clone()));
        // corrupt the payload in place: the digest check must reject it
        let path = dir.join(format!("{}.json", key));
        let text = fs::read_to_string(&path).unwrap();
        let tampered = text.replace("[1,1,2]", "[1,1,3]");
        assert_ne!(text, tampered);
        fs::write(&path, tampered).unwrap();
        assert!(cache.load(&key).is_none());
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn disabled_cache_is_a_noop() {
        let cache = Cache::new(None);
        let key = Cache::key(b"x", "y", "z");
        cache.store(&key, &serde_json::json!(1)).unwrap();
        assert!(cache.load(&key).is_none());
    }
}
