//! One JSON file per key. Writes go through a temp file in the same
//! directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const ENV_VAR: &str = "FLOER_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

/// Builds a cache key from a command name and its parameters.
pub fn key(command: &str, params: &[(&str, String)]) -> String {
    let mut k = command.to_string();
    for (name, value) in params {
        k.push_str("__");
        k.push_str(name);
        k.push('-');
        k.push_str(value);
    }
    k.chars()
        .map(|c| match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '-' | '_' => c,
            '/' => '~',
            _ => '.',
        })
        .collect()
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// `explicit` wins over the environment; `disabled` wins over both.
    pub fn resolve(explicit: Option<PathBuf>, disabled: bool) -> Self {
        if disabled {
            return Cache::disabled();
        }
        let dir = explicit.or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from));
        Cache { dir }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Payload stored under `key`, if any. Unreadable or stale entries are
    /// treated as misses.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let entry: Value = serde_json::from_str(&text).ok()?;
        if entry.get("key")?.as_str()? != key || entry.get("tool_version")?.as_str()? != TOOL_VERSION {
            return None;
        }
        entry.get("payload").cloned()
    }

    pub fn put(&self, key: &str, payload: &Value) -> std::io::Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let entry = json!({"key": key, "tool_version": TOOL_VERSION, "payload": payload});
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string_pretty(&entry)?.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Cached payload, or the computed one (stored on success).
    pub fn get_or_compute<E>(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<Value, E>,
    ) -> Result<Value, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute()?;
        if let Err(e) = self.put(key, &v) {
            eprintln!("warning: cache write failed: {e}");
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_file_safe() {
        let k = key("eigen", &[("g", "2".into()), ("theta", "3/2".into())]);
        assert_eq!(k, "eigen__g-2__theta-3~2");
    }

    #[test]
    fn roundtrip_and_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::resolve(Some(dir.path().to_path_buf()), false);
        assert!(cache.get("x").is_none());
        cache.put("x", &json!({"a": 1})).unwrap();
        assert_eq!(cache.get("x"), Some(json!({"a": 1})));
        cache.put("x", &json!({"a": 2})).unwrap();
        assert_eq!(cache.get("x"), Some(json!({"a": 2})));
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
    }

    #[test]
    fn disabled_cache_stores_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::resolve(Some(dir.path().to_path_buf()), true);
        cache.put("x", &json!(1)).unwrap();
        assert!(cache.get("x").is_none());
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("x.json"), "{not json").unwrap();
        let cache = Cache::resolve(Some(dir.path().to_path_buf()), false);
        assert!(cache.get("x").is_none());
    }
}
