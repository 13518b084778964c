//! Key-value configuration files for the command-line tools.
//!
//! The format is deliberately plain: one `key = value` pair per line, `#`
//! starts a comment, blank lines are ignored. Keys are named after the
//! command-line flags they feed (`sides`, `preset`, `out-csv`, ...), and a
//! flag given on the command line always overrides the file.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::Cell;
use crate::region::WeightPreset;

/// A parsed configuration file: a flat string-to-string map.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    /// Parse configuration text. Duplicate keys are rejected — in a file
    /// this short a repeated key is almost certainly a typo.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let (key, value) = stripped.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected 'key = value', got '{stripped}'"),
            })?;
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() || value.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "empty key or value".into(),
                });
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate key '{key}'"),
                });
            }
        }
        Ok(ConfigFile { entries })
    }

    /// Load and parse a configuration file from disk.
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::parse(&text)
    }

    /// Raw string value for `key`, if present.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Value for `key` parsed as `T`, or `None` when absent. Parse failures
    /// name the offending key.
    pub fn get_parsed<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|e: T::Err| Error::InvalidValue {
                field: key.to_string(),
                message: format!("'{raw}': {e}"),
            }),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Parse a comma-separated list of grid sides, e.g. `"8,10,12"`.
pub fn parse_sides(raw: &str) -> Result<Vec<usize>> {
    let sides: Vec<usize> = raw
        .split(',')
        .map(|part| {
            part.trim().parse().map_err(|_| Error::InvalidValue {
                field: "sides".into(),
                message: format!("'{part}' is not a grid side"),
            })
        })
        .collect::<Result<_>>()?;
    if sides.is_empty() {
        return Err(Error::InvalidValue {
            field: "sides".into(),
            message: "at least one side is required".into(),
        });
    }
    Ok(sides)
}

/// Parse a comma-separated list of preset names, or `"all"` for every
/// preset in canonical order.
pub fn parse_presets(raw: &str) -> Result<Vec<WeightPreset>> {
    if raw.trim().eq_ignore_ascii_case("all") {
        return Ok(WeightPreset::ALL.to_vec());
    }
    raw.split(',')
        .map(|part| {
            part.trim().parse().map_err(|_| Error::InvalidValue {
                field: "presets".into(),
                message: format!("unknown preset '{}'", part.trim()),
            })
        })
        .collect()
}

/// Parse a cell written as `"x,y"`.
pub fn parse_cell(raw: &str) -> Result<Cell> {
    let invalid = || Error::InvalidValue {
        field: "anchor".into(),
        message: format!("'{raw}' is not of the form x,y"),
    };
    let (x, y) = raw.split_once(',').ok_or_else(invalid)?;
    Ok(Cell::new(
        x.trim().parse().map_err(|_| invalid())?,
        y.trim().parse().map_err(|_| invalid())?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_comments_and_blank_lines() {
        let text = "\n# experiment setup\nside = 20\npresets = zero,proposed # trailing comment\n\nout-csv = sweep.csv\n";
        let config = ConfigFile::parse(text).unwrap();
        assert_eq!(config.get("side"), Some("20"));
        assert_eq!(config.get("presets"), Some("zero,proposed"));
        assert_eq!(config.get("out-csv"), Some("sweep.csv"));
        assert_eq!(config.get("missing"), None);
    }

    #[test]
    fn typed_lookup_parses_and_names_bad_keys() {
        let config = ConfigFile::parse("trials = 500\nseed = oops\n").unwrap();
        assert_eq!(config.get_parsed::<usize>("trials").unwrap(), Some(500));
        assert_eq!(config.get_parsed::<usize>("absent").unwrap(), None);
        let err = config.get_parsed::<u64>("seed").unwrap_err();
        assert!(matches!(err, Error::InvalidValue { ref field, .. } if field == "seed"));
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(
            ConfigFile::parse("just a bare phrase\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            ConfigFile::parse("key =\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            ConfigFile::parse("a = 1\na = 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn empty_and_comment_only_files_are_fine() {
        assert!(ConfigFile::parse("").unwrap().is_empty());
        assert!(ConfigFile::parse("# nothing here\n").unwrap().is_empty());
    }

    #[test]
    fn side_lists_parse() {
        assert_eq!(parse_sides("8,10, 12").unwrap(), vec![8, 10, 12]);
        assert_eq!(parse_sides("30").unwrap(), vec![30]);
        assert!(parse_sides("8,x").is_err());
    }

    #[test]
    fn preset_lists_parse() {
        assert_eq!(parse_presets("all").unwrap(), WeightPreset::ALL.to_vec());
        assert_eq!(
            parse_presets("proposed, zero").unwrap(),
            vec![WeightPreset::Proposed, WeightPreset::Zero]
        );
        assert!(parse_presets("grover").is_err());
    }

    #[test]
    fn cells_parse() {
        assert_eq!(parse_cell("3,4").unwrap(), Cell::new(3, 4));
        assert_eq!(parse_cell(" 0 , 0 ").unwrap(), Cell::new(0, 0));
        assert!(parse_cell("3").is_err());
        assert!(parse_cell("3,4,5").is_err());
        assert!(parse_cell("-1,2").is_err());
    }
}
