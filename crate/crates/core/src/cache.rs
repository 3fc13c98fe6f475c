//! Persistent cache of certified generic characters.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::Quiver;

/// A JSON object mapping `"<quiver hash>:<g1>,...,<gn>"` to characters.
/// Entries that fail to parse are dropped on load.
pub struct CharacterCache {
    path: PathBuf,
    entries: Mutex<BTreeMap<String, LaurentPoly>>,
    dropped: usize,
}

pub fn cache_key(quiver: &Quiver, gamma: &[i64]) -> String {
    let parts: Vec<String> = gamma.iter().map(i64::to_string).collect();
    format!("{}:{}", quiver.hash_hex(), parts.join(","))
}

impl CharacterCache {
    /// Opens (or starts) the cache at `path`. A missing file is an empty
    /// cache; an unreadable or malformed file is discarded.
    pub fn open(path: &Path) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut dropped = 0;
        if path.exists() {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
            match serde_json::from_str::<Value>(&text) {
                Ok(Value::Object(map)) => {
                    for (k, v) in map {
                        match parse_entry(&k, &v) {
                            Some(p) => {
                                entries.insert(k, p);
                            }
                            None => dropped += 1,
                        }
                    }
                }
                _ => dropped += 1,
            }
        }
        Ok(CharacterCache {
            path: path.to_path_buf(),
            entries: Mutex::new(entries),
            dropped,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Number of corrupt entries discarded when loading.
    pub fn dropped(&self) -> usize {
        self.dropped
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, quiver: &Quiver, gamma: &[i64]) -> Option<LaurentPoly> {
        let key = cache_key(quiver, gamma);
        let entry = self.entries.lock().expect("cache lock").get(&key).cloned();
        entry.filter(|p| p.nvars() == quiver.vertex_count())
    }

    /// Inserts unless present; certified values for one key never differ.
    pub fn insert(&self, quiver: &Quiver, gamma: &[i64], value: &LaurentPoly) {
        self.entries
            .lock()
            .expect("cache lock")
            .entry(cache_key(quiver, gamma))
            .or_insert_with(|| value.clone());
    }

    /// Writes the whole cache through a temporary file and a rename.
    pub fn save(&self) -> Result<()> {
        let map: Map<String, Value> = self
            .entries
            .lock()
            .expect("cache lock")
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json_value()))
            .collect();
        let text = serde_json::to_string_pretty(&Value::Object(map)).expect("cache serializes");
        let tmp = self.path.with_extension("tmp");
        let io = |e: std::io::Error| Error::Io(e.to_string());
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(text.as_bytes()).map_err(io)?;
        f.write_all(b"\n").map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &self.path).map_err(io)
    }
}

fn parse_entry(key: &str, v: &Value) -> Option<LaurentPoly> {
    let (hash, gamma) = key.split_once(':')?;
    if hash.len() != 16 || !hash.chars().all(|c| c.is_ascii_hexdigit()) {
        return None;
    }
    let n = gamma.split(',').map(|x| x.parse::<i64>()).collect::<std::result::Result<Vec<_>, _>>().ok()?.len();
    let p: LaurentPoly = serde_json::from_value(v.clone()).ok()?;
    (p.nvars() == n && !p.is_zero()).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let q = Quiver::linear_a(2);
        let c = CharacterCache::open(&path).unwrap();
        assert!(c.is_empty());
        let p: LaurentPoly = "(1+x2)/x1".parse().unwrap();
        c.insert(&q, &[1, -1], &p);
        c.save().unwrap();
        let again = CharacterCache::open(&path).unwrap();
        assert_eq!(again.get(&q, &[1, -1]), Some(p.clone()));
        assert_eq!(again.get(&q, &[1, 0]), None);

        let mut raw: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        raw["garbage"] = Value::from(3);
        raw[format!("{}:0,1", q.hash_hex())] = serde_json::json!({"nvars": 2, "terms": "x"});
        fs::write(&path, raw.to_string()).unwrap();
        let partial = CharacterCache::open(&path).unwrap();
        assert_eq!(partial.dropped(), 2);
        assert_eq!(partial.get(&q, &[1, -1]), Some(p));

        fs::write(&path, "not json").unwrap();
        assert!(CharacterCache::open(&path).unwrap().is_empty());
    }
}
