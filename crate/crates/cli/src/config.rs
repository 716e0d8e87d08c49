//! `key = value` files whose keys mirror the long flags.

use std::collections::BTreeMap;
use std::path::Path;

use crate::CliError;

pub const KEYS: &[&str] = &[
    "weights",
    "degree",
    "max-degree",
    "field",
    "seed",
    "sampling",
    "presentation-bound",
    "negative-control",
    "output",
    "timings",
    "sheaf",
    "twists",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", no + 1)))?;
            let k = k.trim().replace('_', "-");
            if !KEYS.contains(&k.as_str()) {
                return Err(CliError::Usage(format!("config line {}: unknown key `{k}`", no + 1)));
            }
            values.insert(k, v.trim().trim_matches('"').to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag value if given, else the parsed config value.
    pub fn pick<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|e| CliError::Usage(format!("config `{key}`: {e}"))))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_underscores() {
        let c = Config::parse("# top\nseed = 11\npresentation_bound = 12 # inline\n\nfield = \"Q\"\n").unwrap();
        assert_eq!(c.get("seed"), Some("11"));
        assert_eq!(c.get("presentation-bound"), Some("12"));
        assert_eq!(c.get("field"), Some("Q"));
        assert_eq!(c.pick(Some(3u64), "seed").unwrap(), Some(3));
        assert_eq!(c.pick(None::<u64>, "seed").unwrap(), Some(11));
        assert_eq!(c.pick(None::<u64>, "degree").unwrap(), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::parse("seed 11").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("seed = x").unwrap().pick(None::<u64>, "seed").is_err());
    }
}
