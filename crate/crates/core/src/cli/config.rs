use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::net_verifier::MAX_DEPTH;

pub const SCHEMA_VERSION: u32 = 1;

/// Largest qubit count the net suite accepts.
pub const MAX_QUBITS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {reason}")]
    BadValue { key: String, reason: String },
    #[error("line {line}: expected key=value, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("{0}")]
    Conflict(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Geometry,
    Algebra,
    Lattice,
    Protocols,
    Net,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Geometry,
        Suite::Algebra,
        Suite::Lattice,
        Suite::Protocols,
        Suite::Net,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Algebra => "algebra",
            Suite::Lattice => "lattice",
            Suite::Protocols => "protocols",
            Suite::Net => "net",
            Suite::All => "all",
        }
    }

    /// The concrete suites this selector runs, in report order.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::ALL.to_vec(),
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "geometry" => Suite::Geometry,
            "algebra" => Suite::Algebra,
            "lattice" => Suite::Lattice,
            "protocols" => Suite::Protocols,
            "net" => Suite::Net,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite `{s}`")),
        })
    }
}

/// Everything a run depends on. The defaults are the acceptance settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub seed: u64,
    #[serde(skip)]
    pub out: PathBuf,
    /// Half-extents `(t_max, x_max)` of the geometry window.
    pub window: (f64, f64),
    pub h: f64,
    pub lattice_n: usize,
    pub mass: f64,
    pub spacing: f64,
    pub qubits: usize,
    pub depth: usize,
    pub schema_version: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            seed: 7,
            out: PathBuf::from("verify-out"),
            window: (8.0, 8.0),
            h: 0.05,
            lattice_n: 512,
            mass: 1.0,
            spacing: 1.0,
            qubits: 5,
            depth: 2,
            schema_version: SCHEMA_VERSION,
        }
    }
}

pub const KEYS: [&str; 11] = [
    "suite",
    "seed",
    "out",
    "window",
    "h",
    "lattice_n",
    "mass",
    "spacing",
    "qubits",
    "depth",
    "schema_version",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::BadValue {
        key: key.into(),
        reason: format!("`{value}`: {e}"),
    })
}

fn bad(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::BadValue {
        key: key.into(),
        reason: reason.into(),
    }
}

impl RunConfig {
    /// Sets one key. Keys use underscores; dashes are accepted too.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "suite" => self.suite = parse(&key, value)?,
            "seed" => self.seed = parse(&key, value)?,
            "out" => {
                if value.is_empty() {
                    return Err(bad(&key, "empty path"));
                }
                self.out = PathBuf::from(value)
            }
            "window" => {
                let (t, x) = value
                    .split_once(['x', 'X'])
                    .ok_or_else(|| bad(&key, format!("`{value}` is not of the form TxX")))?;
                self.window = (parse(&key, t.trim())?, parse(&key, x.trim())?);
            }
            "h" => self.h = parse(&key, value)?,
            "lattice_n" => self.lattice_n = parse(&key, value)?,
            "mass" => self.mass = parse(&key, value)?,
            "spacing" => self.spacing = parse(&key, value)?,
            "qubits" => self.qubits = parse(&key, value)?,
            "depth" => self.depth = parse(&key, value)?,
            "schema_version" => self.schema_version = parse(&key, value)?,
            _ => return Err(ConfigError::UnknownKey(key)),
        }
        Ok(())
    }

    /// Applies a `key=value` file. Blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        self.apply_str(&text)
    }

    pub fn apply_str(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                text: raw.to_string(),
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(bad(
                "schema_version",
                format!("only version {SCHEMA_VERSION} is supported"),
            ));
        }
        let (t, x) = self.window;
        // the suite's cylinder reaches |t| + |x| = 5
        if !(t >= 5.0 && x >= 5.0 && t.is_finite() && x.is_finite()) {
            return Err(bad("window", "both half-extents must be finite and at least 5"));
        }
        if !(self.h > 0.0 && self.h <= 0.5) {
            return Err(bad("h", "must lie in (0, 0.5]"));
        }
        crate::geometry::Window::new(t, x, self.h).map_err(|e| bad("window", e.to_string()))?;
        if self.lattice_n < 64 || !self.lattice_n.is_power_of_two() {
            return Err(bad("lattice_n", "must be a power of two, at least 64"));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(bad("mass", "must be positive and finite"));
        }
        if !(self.spacing > 0.0 && self.spacing.is_finite()) {
            return Err(bad("spacing", "must be positive and finite"));
        }
        if !(3..=MAX_QUBITS).contains(&self.qubits) {
            return Err(bad("qubits", format!("must lie in 3..={MAX_QUBITS}")));
        }
        if !(1..=MAX_DEPTH).contains(&self.depth) {
            return Err(bad("depth", format!("must lie in 1..={MAX_DEPTH}")));
        }
        Ok(())
    }
}
