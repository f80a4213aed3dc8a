//! `key = value` sweep files. Keys mirror the long flag names.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub const KEYS: [&str; 9] = [
    "gamma1-db",
    "gamma2",
    "gamma0",
    "schemes",
    "out",
    "format",
    "verify",
    "grid-points",
    "noise-power",
];

/// Blank lines and `#` comments are skipped; a repeated key overrides the
/// earlier value.
pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected key = value, got `{line}`", n + 1);
        };
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            bail!("line {}: unknown key `{key}`", n + 1);
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

pub fn load(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}
