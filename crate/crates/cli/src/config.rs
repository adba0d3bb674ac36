//! Flat key-value campaign files: one `key = value` per line, `#` starts a
//! comment. Command-line flags override file values.

use exrec_core::{Error, Result};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Debug, Default)]
pub struct KeyValues {
    map: BTreeMap<String, String>,
}

pub const KNOWN_KEYS: [&str; 14] =
    ["code", "style", "L", "R", "perfect-ancilla", "pmem", "p0", "trials", "seed", "batch", "workers", "out", "tables", "resume"];

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Parse(format!("config line {}: expected key = value", i + 1)));
            };
            let (k, v) = (k.trim(), v.trim());
            if !KNOWN_KEYS.contains(&k) {
                return Err(Error::Parse(format!("config line {}: unknown key {k:?}", i + 1)));
            }
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Parse(format!("config line {}: duplicate key {k:?}", i + 1)));
            }
        }
        Ok(KeyValues { map })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Resource(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }
}

/// Flag value if given, else the file value.
pub fn pick(flag: Option<String>, file: &KeyValues, key: &str) -> Option<String> {
    flag.or_else(|| file.get(key).map(str::to_string))
}

pub fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Parse(format!("{key}: cannot parse {v:?}")))
}

/// Comma- or space-separated list of probabilities.
pub fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(|s| parse_num(key, s)).collect()
}

pub fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Parse(format!("{key}: expected true or false, got {v:?}"))),
    }
}
