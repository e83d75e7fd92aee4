//! The on-disk result cache.
//!
//! Expensive search results (distances, diameters) are memoized in a single
//! append-only file of JSON records, one per line, each tagged with a schema
//! version. The cache lives in the directory named by the `CYCLO_CACHE_DIR`
//! environment variable; it is disabled entirely when that variable is unset
//! or when `--no-cache` is passed. A hit must reproduce the exact bytes a
//! fresh computation would print, so a record stores everything the printers
//! consume — nothing derived at print time may depend on wall-clock state.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

/// Version tag carried by every record this binary reads or writes, both in
/// the cache file and on `--format records` output lines.
pub const SCHEMA: u32 = 1;

/// A memoized search outcome. `value` is exact when `partial` is false;
/// otherwise the search hit its cap and `value` is the best proven lower
/// bound (0 when the cap fell before the first completed level).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedSearch {
    pub value: u32,
    pub partial: bool,
    pub explored: u64,
    pub method: String,
}

#[derive(Serialize, Deserialize)]
struct Record {
    schema: u32,
    key: serde_json::Value,
    result: CachedSearch,
}

pub struct ResultCache {
    file: Option<PathBuf>,
}

impl ResultCache {
    /// A cache rooted at `$CYCLO_CACHE_DIR/results.jsonl`, or a disabled one
    /// when the variable is unset or `--no-cache` was given.
    pub fn from_env(no_cache: bool) -> ResultCache {
        let file = if no_cache {
            None
        } else {
            std::env::var_os("CYCLO_CACHE_DIR").map(|dir| PathBuf::from(dir).join("results.jsonl"))
        };
        ResultCache { file }
    }

    /// The first stored result matching `key`. Reading is best-effort: a
    /// missing file, malformed lines, and records from other schema versions
    /// all count as misses, never as errors — the cache is disposable.
    pub fn lookup(&self, key: &serde_json::Value) -> Option<CachedSearch> {
        let path = self.file.as_ref()?;
        let body = fs::read_to_string(path).ok()?;
        body.lines()
            .filter_map(|line| serde_json::from_str::<Record>(line).ok())
            .find(|rec| rec.schema == SCHEMA && rec.key == *key)
            .map(|rec| rec.result)
    }

    /// Appends one record, creating the cache directory on first use.
    /// Unlike lookups, write failures are loud: the user opted in to caching
    /// and should know when nothing is being saved.
    pub fn store(&self, key: &serde_json::Value, result: &CachedSearch) -> Result<()> {
        let Some(path) = self.file.as_ref() else {
            return Ok(());
        };
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)
                .with_context(|| format!("creating cache directory {}", dir.display()))?;
        }
        let record = Record {
            schema: SCHEMA,
            key: key.clone(),
            result: result.clone(),
        };
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening cache file {}", path.display()))?;
        writeln!(file, "{}", serde_json::to_string(&record)?)?;
        Ok(())
    }

    /// Looks `key` up, computing and storing on a miss. The flag is true on
    /// a hit.
    pub fn get_or_compute(
        &self,
        key: serde_json::Value,
        compute: impl FnOnce() -> Result<CachedSearch>,
    ) -> Result<(CachedSearch, bool)> {
        if let Some(hit) = self.lookup(&key) {
            return Ok((hit, true));
        }
        let fresh = compute()?;
        self.store(&key, &fresh)?;
        Ok((fresh, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn cache_at(dir: &std::path::Path) -> ResultCache {
        ResultCache {
            file: Some(dir.join("results.jsonl")),
        }
    }

    #[test]
    fn round_trips_a_record() {
        let dir = tempfile::tempdir().unwrap();
        let cache = cache_at(dir.path());
        let key = json!({"cmd": "diameter", "d": 4, "cap": null});
        assert_eq!(cache.lookup(&key), None);

        let result = CachedSearch {
            value: 7,
            partial: false,
            explored: 70,
            method: "orbit-reduced".into(),
        };
        cache.store(&key, &result).unwrap();
        assert_eq!(cache.lookup(&key), Some(result));
        assert_eq!(cache.lookup(&json!({"cmd": "diameter", "d": 5})), None);
    }

    #[test]
    fn compute_runs_once_per_key() {
        let dir = tempfile::tempdir().unwrap();
        let cache = cache_at(dir.path());
        let key = json!({"cmd": "distance", "a": "n 4\n0 2\n", "b": "n 4\n1 3\n"});
        let fresh = CachedSearch {
            value: 1,
            partial: false,
            explored: 2,
            method: "bidirectional-bfs".into(),
        };

        let mut calls = 0;
        for expect_hit in [false, true, true] {
            let (got, hit) = cache
                .get_or_compute(key.clone(), || {
                    calls += 1;
                    Ok(fresh.clone())
                })
                .unwrap();
            assert_eq!(got, fresh);
            assert_eq!(hit, expect_hit);
        }
        assert_eq!(calls, 1);
    }

    #[test]
    fn garbage_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("results.jsonl");
        std::fs::write(
            &path,
            "not json\n{\"schema\":999,\"key\":1,\"result\":null}\n",
        )
        .unwrap();

        let cache = cache_at(dir.path());
        let key = json!({"cmd": "diameter", "d": 2, "cap": null});
        assert_eq!(cache.lookup(&key), None);

        let result = CachedSearch {
            value: 3,
            partial: false,
            explored: 6,
            method: "orbit-reduced".into(),
        };
        cache.store(&key, &result).unwrap();
        assert_eq!(cache.lookup(&key), Some(result));
    }

    #[test]
    fn disabled_cache_is_inert() {
        let cache = ResultCache { file: None };
        let key = json!({"cmd": "diameter", "d": 2});
        let result = CachedSearch {
            value: 3,
            partial: false,
            explored: 6,
            method: "orbit-reduced".into(),
        };
        cache.store(&key, &result).unwrap();
        assert_eq!(cache.lookup(&key), None);
    }
}
