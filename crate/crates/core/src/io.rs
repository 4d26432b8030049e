//! JSON files and environment settings shared by the command-line tool and
//! the examples.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Environment variable overriding enumeration and search budgets.
pub const BUDGET_ENV: &str = "COLORFUL_BUDGET";

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value)).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// `COLORFUL_BUDGET` when set to an integer, else `default`.
pub fn budget_from_env(default: u64) -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{BUDGET_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(default),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GeneratedInstance, GeneratorKind, GeneratorSpec};

    #[test]
    fn instance_round_trip_is_byte_identical() {
        let inst = generate(&GeneratorSpec::new(GeneratorKind::Random, 3, 7)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("i.json");
        write_json(&path, &inst).unwrap();
        let back: GeneratedInstance = read_json(&path).unwrap();
        assert_eq!(back, inst);
        assert_eq!(to_json(&back), fs::read_to_string(&path).unwrap());
    }

    #[test]
    fn malformed_json_is_invalid_input() {
        let r: Result<GeneratedInstance> = from_json("{\"dimension\": 2");
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }
}
