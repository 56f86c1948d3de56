//! On-disk result cache. Entries are keyed by a hash of the crate version,
//! the operation name and its parameters, and carry a checksum of their
//! payload so a damaged file is dropped and recomputed rather than trusted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "ARONE_CACHE_DIR";

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into(), version: env!("CARGO_PKG_VERSION").to_string() }
    }

    /// Same cache, pretending to be a different build. Used to check that a
    /// version bump invalidates entries.
    pub fn with_version(mut self, version: &str) -> Self {
        self.version = version.to_string();
        self
    }

    /// `--cache-dir` wins over the environment; no directory means no cache.
    pub fn resolve(flag: Option<&Path>) -> Option<Cache> {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from))
            .map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(&self, op: &str, params: &Value) -> String {
        // serde_json maps are sorted, so this text is canonical
        let text = json!({ "version": self.version, "op": op, "params": params }).to_string();
        sha256_hex(text.as_bytes())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, op: &str, params: &Value) -> Option<Value> {
        let path = self.path(&self.key(op, params));
        let text = fs::read_to_string(&path).ok()?;
        let entry: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(_) => {
                let _ = fs::remove_file(&path);
                return None;
            }
        };
        let payload = entry.get("payload")?.as_str()?;
        if entry.get("checksum").and_then(Value::as_str) != Some(sha256_hex(payload.as_bytes()).as_str()) {
            let _ = fs::remove_file(&path);
            return None;
        }
        serde_json::from_str(payload).ok()
    }

    pub fn put(&self, op: &str, params: &Value, value: &Value) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let payload = value.to_string();
        let entry = json!({
            "op": op,
            "params": params,
            "version": self.version,
            "checksum": sha256_hex(payload.as_bytes()),
            "payload": payload,
        });
        let key = self.key(op, params);
        // write then rename so a reader never sees half an entry
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(entry.to_string().as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, self.path(&key))
    }

    /// Looks the value up, computing and storing it on a miss. Failure to
    /// write is not an error: the cache is only an optimization.
    pub fn get_or_compute<E>(
        &self,
        op: &str,
        params: &Value,
        compute: impl FnOnce() -> Result<Value, E>,
    ) -> Result<Value, E> {
        if let Some(v) = self.get(op, params) {
            return Ok(v);
        }
        let v = compute()?;
        let _ = self.put(op, params, &v);
        Ok(v)
    }

    pub fn entries(&self) -> Vec<PathBuf> {
        let mut out: Vec<PathBuf> = fs::read_dir(&self.dir)
            .into_iter()
            .flatten()
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        out.sort();
        out
    }

    pub fn clear(&self) -> std::io::Result<usize> {
        let entries = self.entries();
        for p in &entries {
            fs::remove_file(p)?;
        }
        Ok(entries.len())
    }
}

/// Runs `compute` through the cache when there is one.
pub fn cached<E>(
    cache: Option<&Cache>,
    op: &str,
    params: &Value,
    compute: impl FnOnce() -> Result<Value, E>,
) -> Result<Value, E> {
    match cache {
        Some(c) => c.get_or_compute(op, params, compute),
        None => compute(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_entry_is_discarded() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let params = json!({"d": 3});
        cache.put("op", &params, &json!([1, 2])).unwrap();
        assert_eq!(cache.get("op", &params), Some(json!([1, 2])));
        let path = cache.entries().pop().unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("[1,2]", "[1,3]");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.get("op", &params), None);
        assert!(cache.entries().is_empty());
    }

    #[test]
    fn version_is_part_of_the_key() {
        let dir = tempfile::tempdir().unwrap();
        let params = json!({"d": 3});
        Cache::new(dir.path()).put("op", &params, &json!(1)).unwrap();
        assert_eq!(Cache::new(dir.path()).with_version("999.0.0").get("op", &params), None);
    }
}
