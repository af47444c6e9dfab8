//! `key=value` configuration files and option resolution.

use std::collections::BTreeMap;
use std::path::Path;

use fracop::{Error, Result};

/// Settings read from a `--config` file; command-line flags take precedence.
#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Spec(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// One `key=value` per line; blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Spec(format!("config line {}: expected key=value", i + 1)))?;
            values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn num(&self, key: &str) -> Result<Option<f64>> {
        self.text(key)
            .map(|v| v.parse().map_err(|_| Error::Spec(format!("config `{key}`: bad number `{v}`"))))
            .transpose()
    }

    pub fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.text(key).map(parse_list).transpose()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }
}

/// Comma-separated numbers.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Error::Spec(format!("bad number `{s}`"))))
        .collect()
}

/// `a,b,c` or `lo:hi:n` (n evenly spaced points, inclusive).
pub fn parse_points(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [lo, hi, n] => {
            let lo: f64 = lo.trim().parse().map_err(|_| Error::Spec(format!("bad range start `{lo}`")))?;
            let hi: f64 = hi.trim().parse().map_err(|_| Error::Spec(format!("bad range end `{hi}`")))?;
            let n: usize = n.trim().parse().map_err(|_| Error::Spec(format!("bad point count `{n}`")))?;
            match n {
                0 => Err(Error::Spec("point count must be positive".into())),
                1 => Ok(vec![lo]),
                _ => Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()),
            }
        }
        [_] => {
            let v = parse_list(text)?;
            if v.is_empty() {
                Err(Error::Spec("no points given".into()))
            } else {
                Ok(v)
            }
        }
        _ => Err(Error::Spec(format!("points must be `a,b,...` or `lo:hi:n`, got `{text}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_files_and_points() {
        let c = FileConfig::parse("# tolerances\nrel-tol = 1e-9\n\nnu=-0.5,0\n").unwrap();
        assert_eq!(c.num("rel-tol").unwrap(), Some(1e-9));
        assert_eq!(c.list("nu").unwrap(), Some(vec![-0.5, 0.0]));
        assert!(FileConfig::parse("oops").is_err());
        assert_eq!(parse_points("1").unwrap(), vec![1.0]);
        assert_eq!(parse_points("1:2:3").unwrap(), vec![1.0, 1.5, 2.0]);
        assert!(parse_points("1:2").is_err());
    }
}
