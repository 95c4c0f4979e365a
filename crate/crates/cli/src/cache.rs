//! On-disk memo for expensive results, one JSON file per key.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::de::DeserializeOwned;
use serde::Serialize;

/// Bumped whenever a cached payload changes shape.
const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    fn path(&self, op: &str, spec: &str, terms: i64) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        Some(dir.join(format!("v{FORMAT_VERSION}-{op}-{spec}-t{terms}.json")))
    }

    /// Returns the cached value for the key, or computes and stores it.
    /// A corrupt or unreadable entry is recomputed; a failed store only warns.
    pub fn get_or_compute<T, E>(
        &self,
        op: &str,
        spec: &str,
        terms: i64,
        compute: impl FnOnce() -> Result<T, E>,
    ) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        let Some(path) = self.path(op, spec, terms) else {
            return compute();
        };
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(v) = serde_json::from_str(&text) {
                return Ok(v);
            }
        }
        let value = compute()?;
        if let Err(e) = store(&path, &value) {
            eprintln!("warning: could not write cache entry {}: {e}", path.display());
        }
        Ok(value)
    }
}

/// Write to a sibling temp file, then rename over the target so readers
/// never see a partial entry.
fn store<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_nanos());
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("entry");
    let tmp = dir.join(format!(".{name}.{}.{nanos}.tmp", std::process::id()));
    let text = serde_json::to_string(value).map_err(std::io::Error::other)?;
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_lookup_hits_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let first: Result<Vec<i64>, ()> = cache.get_or_compute("op", "s", 3, || Ok(vec![1, 2, 3]));
        assert_eq!(first.unwrap(), vec![1, 2, 3]);
        let second: Result<Vec<i64>, ()> = cache.get_or_compute("op", "s", 3, || panic!("recomputed"));
        assert_eq!(second.unwrap(), vec![1, 2, 3]);
        let other: Result<Vec<i64>, ()> = cache.get_or_compute("op", "s", 4, || Ok(vec![]));
        assert!(other.unwrap().is_empty());
    }

    #[test]
    fn corrupt_entry_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        fs::write(cache.path("op", "s", 1).unwrap(), "{not json").unwrap();
        let v: Result<i64, ()> = cache.get_or_compute("op", "s", 1, || Ok(7));
        assert_eq!(v.unwrap(), 7);
        let again: Result<i64, ()> = cache.get_or_compute("op", "s", 1, || Ok(8));
        assert_eq!(again.unwrap(), 7);
    }

    #[test]
    fn no_dir_means_no_cache() {
        let cache = Cache::default();
        let mut calls = 0;
        for _ in 0..2 {
            let _: Result<(), ()> = cache.get_or_compute("op", "s", 1, || {
                calls += 1;
                Ok(())
            });
        }
        assert_eq!(calls, 2);
    }
}
