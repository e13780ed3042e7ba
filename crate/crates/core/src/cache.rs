//! Content-addressed on-disk result cache.
//!
//! Each object lives in `<sha256(key)>.json` as `{"key", "checksum",
//! "payload"}`, where `checksum` is the SHA-256 of the canonical payload
//! text. `index.json` maps file stems to keys for browsing. Writes go to a
//! temporary file that is then renamed over the target.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "UQRS_CACHE_DIR";

const INDEX: &str = "index.json";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    checksum: String,
    payload: serde_json::Value,
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Canonical text: compact, keys sorted.
pub fn canonical(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().expect("cache files live in a directory");
    let tmp = tempfile::NamedTempFile::new_in(dir)?;
    fs::write(tmp.path(), text)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", sha256_hex(key)))
    }

    pub fn index(&self) -> Result<BTreeMap<String, String>> {
        let p = self.dir.join(INDEX);
        if !p.exists() {
            return Ok(BTreeMap::new());
        }
        let text = fs::read_to_string(&p)?;
        serde_json::from_str(&text).map_err(|e| Error::Cache(format!("unreadable index: {e}")))
    }

    /// Stored payload for `key`, verified against its checksum.
    pub fn get(&self, key: &str) -> Result<Option<serde_json::Value>> {
        let p = self.path_for(key);
        if !p.exists() {
            return Ok(None);
        }
        let entry = read_entry(&p)?;
        if entry.key != key {
            return Err(Error::Cache(format!("{} holds key {:?}, expected {key:?}", p.display(), entry.key)));
        }
        Ok(Some(entry.payload))
    }

    pub fn put(&self, key: &str, payload: &serde_json::Value) -> Result<()> {
        let entry = Entry { key: key.to_string(), checksum: sha256_hex(&canonical(payload)), payload: payload.clone() };
        let path = self.path_for(key);
        write_atomic(&path, &canonical(&serde_json::to_value(&entry)?))?;
        let mut idx = self.index()?;
        let stem = path.file_stem().and_then(|s| s.to_str()).expect("hex name").to_string();
        if idx.insert(stem, key.to_string()).is_none() {
            write_atomic(&self.dir.join(INDEX), &serde_json::to_string_pretty(&idx)?)?;
        }
        Ok(())
    }

    /// Cached value or `compute()` stored under `key`.
    pub fn get_or_put(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<serde_json::Value>,
    ) -> Result<serde_json::Value> {
        if let Some(v) = self.get(key)? {
            return Ok(v);
        }
        let v = compute()?;
        self.put(key, &v)?;
        Ok(v)
    }
}

fn read_entry(p: &Path) -> Result<Entry> {
    let text = fs::read_to_string(p)?;
    let entry: Entry =
        serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{} is not a cache entry: {e}", p.display())))?;
    let sum = sha256_hex(&canonical(&entry.payload));
    if sum != entry.checksum {
        return Err(Error::Cache(format!("checksum mismatch in {} (key {:?})", p.display(), entry.key)));
    }
    Ok(entry)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub checked: Vec<String>,
    pub failures: Vec<String>,
}

impl RoundtripReport {
    pub fn is_empty(&self) -> bool {
        self.checked.is_empty() && self.failures.is_empty()
    }
}

/// Re-reads every indexed entry, verifies its checksum and that the payload
/// re-serializes to the same canonical text.
pub fn cache_roundtrip(dir: &Path) -> Result<RoundtripReport> {
    let cache = Cache::open(dir)?;
    let mut report = RoundtripReport::default();
    for (stem, key) in cache.index()? {
        let p = dir.join(format!("{stem}.json"));
        match read_entry(&p) {
            Ok(entry) => {
                let text = fs::read_to_string(&p)?;
                let again = canonical(&serde_json::to_value(&entry)?);
                if entry.key != key {
                    report.failures.push(format!("{key}: file holds key {:?}", entry.key));
                } else if again != text {
                    report.failures.push(format!("{key}: not in canonical form"));
                } else {
                    report.checked.push(key);
                }
            }
            Err(e) => report.failures.push(format!("{key}: {e}")),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{LieType, RootSystem};
    use crate::weight_mults::{freudenthal, MultTable};

    #[test]
    fn fresh_dir_is_empty() {
        let d = tempfile::tempdir().unwrap();
        assert!(cache_roundtrip(d.path()).unwrap().is_empty());
    }

    #[test]
    fn table_roundtrips_and_tampering_is_caught() {
        let d = tempfile::tempdir().unwrap();
        let cache = Cache::open(d.path()).unwrap();
        let rs = RootSystem::new(LieType::A, 2).unwrap();
        let t = freudenthal(&rs, &rs.fundamental(0)).unwrap();
        let key = "mults/A2/1,0";
        let doc = t.to_json(&rs);
        cache.put(key, &doc).unwrap();
        let back = cache.get(key).unwrap().unwrap();
        assert_eq!(canonical(&back), canonical(&doc));
        assert_eq!(canonical(&MultTable::from_json(&rs, &back).unwrap().to_json(&rs)), canonical(&doc));
        let rep = cache_roundtrip(d.path()).unwrap();
        assert_eq!(rep.checked, vec![key.to_string()]);
        assert!(rep.failures.is_empty());
        let p = cache.path_for(key);
        let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
        v["payload"]["mults"][0]["m"] = serde_json::json!(7);
        fs::write(&p, canonical(&v)).unwrap();
        assert!(matches!(cache.get(key), Err(Error::Cache(_))));
        let rep = cache_roundtrip(d.path()).unwrap();
        assert_eq!(rep.failures.len(), 1);
    }
}
