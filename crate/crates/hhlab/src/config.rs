//! Plain-text `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! Numeric values may be integers, decimals or `p/q` rationals, and lists are
//! comma separated. Keys are case-sensitive and may appear only once.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::Num;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, (usize, String)>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected `key = value`, found `{content}`"),
            })?;
            let key = key.trim();
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Parse { line, message: format!("invalid key `{key}`") });
            }
            if entries.insert(key.to_string(), (line, value.trim().to_string())).is_some() {
                return Err(Error::Parse { line, message: format!("duplicate key `{key}`") });
            }
        }
        Ok(Config { entries })
    }

    pub fn load(path: &Path) -> std::io::Result<Result<Config>> {
        Ok(Config::parse(&std::fs::read_to_string(path)?))
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.entries.insert(key.to_string(), (0, value.to_string()));
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    /// Iterate over `(key, raw value)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, (_, v))| (k.as_str(), v.as_str()))
    }

    pub fn str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    pub fn num(&self, key: &str) -> Result<Option<Num>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, v)) => Num::parse(v).map(Some).ok_or_else(|| Error::Parse {
                line: *line,
                message: format!("`{key}` is not a number: `{v}`"),
            }),
        }
    }

    pub fn require_num(&self, key: &str) -> Result<Num> {
        self.num(key)?.ok_or_else(|| Error::Parse { line: 0, message: format!("missing key `{key}`") })
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.num(key)?.map_or(default, Num::value))
    }

    pub fn int(&self, key: &str) -> Result<Option<i64>> {
        match self.num(key)? {
            None => Ok(None),
            Some(n) => match n.exact() {
                Some((v, 1)) => Ok(Some(v)),
                _ => Err(Error::Parse {
                    line: self.entries[key].0,
                    message: format!("`{key}` must be an integer"),
                }),
            },
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        match self.entries.get(key) {
            None => Ok(default),
            Some((line, v)) => match v.as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                _ => Err(Error::Parse { line: *line, message: format!("`{key}` must be true or false") }),
            },
        }
    }

    pub fn num_list(&self, key: &str) -> Result<Option<Vec<Num>>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, v)) => v
                .split(',')
                .map(|item| {
                    Num::parse(item).ok_or_else(|| Error::Parse {
                        line: *line,
                        message: format!("`{key}` has a non-numeric item `{}`", item.trim()),
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map(Some),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_rationals_and_lists() {
        let cfg = Config::parse(
            "# plane config\n d = 3\na = -15/64   # coupling\n\ngamma=0.1\nlambdas = 10, 20,40\n",
        )
        .unwrap();
        assert_eq!(cfg.int("d").unwrap(), Some(3));
        assert_eq!(cfg.num("a").unwrap().unwrap().exact(), Some((-15, 64)));
        assert_eq!(cfg.num("gamma").unwrap().unwrap().exact(), Some((1, 10)));
        let l: Vec<f64> = cfg.num_list("lambdas").unwrap().unwrap().iter().map(|n| n.value()).collect();
        assert_eq!(l, vec![10.0, 20.0, 40.0]);
        assert_eq!(cfg.num("missing").unwrap(), None);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(Config::parse("d 3"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Config::parse("d=3\nd=4"), Err(Error::Parse { line: 2, .. })));
        let cfg = Config::parse("a = x/2").unwrap();
        assert!(cfg.num("a").is_err());
        let cfg = Config::parse("d = 2.5").unwrap();
        assert!(cfg.int("d").is_err());
    }
}
