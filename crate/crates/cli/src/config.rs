//! Run configuration: built-in defaults, optionally overridden by a TOML file,
//! overridden in turn by command-line flags.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::suites::DEFAULT_TOLERANCES;

/// A configuration problem, reported with the offending field path.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error at `{}`: {}", self.path, self.message)
    }
}

impl std::error::Error for ConfigError {}

fn err(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError { path: path.into(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub extent: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumConfig {
    /// Half-width of the phase-space evaluation grid.
    pub extent: f64,
    pub n: usize,
    /// Hermite modes for spectral kernels.
    pub n_max: usize,
    /// Damping δ of the complex angle `α − iδ` used by the convergent spectral checks.
    pub damping: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub field_count: usize,
    /// Grid of the random test-field family.
    pub grid: GridConfig,
    /// Chirplet angles (radians).
    pub alphas: Vec<f64>,
    /// Chirplet damping ladder.
    pub epsilons: Vec<f64>,
    /// Angles for the spectral kernel checks (radians).
    pub hermite_alphas: Vec<f64>,
    pub quantum: QuantumConfig,
    pub tolerances: BTreeMap<String, f64>,
    pub out_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_917,
            field_count: 10,
            grid: GridConfig { extent: 6.0, n: 128 },
            alphas: vec![PI / 3.0, FRAC_PI_2, 2.0 * PI / 3.0],
            epsilons: vec![0.1, 0.05, 0.02, 0.01],
            hermite_alphas: vec![0.3, 1.0, FRAC_PI_2, 2.0, 2.8],
            quantum: QuantumConfig { extent: 5.0, n: 128, n_max: 120, damping: 0.25 },
            tolerances: DEFAULT_TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            out_dir: None,
        }
    }
}

/// Partial configuration as read from a file; absent fields keep the defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    seed: Option<u64>,
    field_count: Option<usize>,
    grid: Option<PartialGrid>,
    alphas: Option<Vec<f64>>,
    epsilons: Option<Vec<f64>>,
    hermite_alphas: Option<Vec<f64>>,
    quantum: Option<PartialQuantum>,
    tolerances: Option<BTreeMap<String, f64>>,
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialGrid {
    extent: Option<f64>,
    n: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialQuantum {
    extent: Option<f64>,
    n: Option<usize>,
    n_max: Option<usize>,
    damping: Option<f64>,
}

/// Command-line overrides.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub alphas: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub out_dir: Option<PathBuf>,
    pub tolerances: Vec<(String, f64)>,
    pub seed: Option<u64>,
}

/// Parses `key=value` for `--tol`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("tolerance `{v}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

impl RunConfig {
    /// Applies a TOML document on top of `self`.
    pub fn merge_toml(&mut self, text: &str) -> Result<(), ConfigError> {
        let file: FileConfig = toml::from_str(text).map_err(|e| {
            let message = e.message().to_string();
            let path = toml_error_path(text, &e);
            err(path, message)
        })?;
        if let Some(v) = file.seed {
            self.seed = v;
        }
        if let Some(v) = file.field_count {
            self.field_count = v;
        }
        if let Some(g) = file.grid {
            if let Some(v) = g.extent {
                self.grid.extent = v;
            }
            if let Some(v) = g.n {
                self.grid.n = v;
            }
        }
        if let Some(v) = file.alphas {
            self.alphas = v;
        }
        if let Some(v) = file.epsilons {
            self.epsilons = v;
        }
        if let Some(v) = file.hermite_alphas {
            self.hermite_alphas = v;
        }
        if let Some(q) = file.quantum {
            if let Some(v) = q.extent {
                self.quantum.extent = v;
            }
            if let Some(v) = q.n {
                self.quantum.n = v;
            }
            if let Some(v) = q.n_max {
                self.quantum.n_max = v;
            }
            if let Some(v) = q.damping {
                self.quantum.damping = v;
            }
        }
        if let Some(t) = file.tolerances {
            for (k, v) in t {
                self.set_tolerance(&format!("tolerances.{k}"), k.clone(), v)?;
            }
        }
        if let Some(v) = file.out_dir {
            self.out_dir = Some(v);
        }
        Ok(())
    }

    fn set_tolerance(&mut self, path: &str, key: String, value: f64) -> Result<(), ConfigError> {
        if !self.tolerances.contains_key(&key) {
            let known: Vec<&str> = DEFAULT_TOLERANCES.iter().map(|(k, _)| *k).collect();
            return Err(err(path, format!("unknown tolerance key; known keys: {}", known.join(", "))));
        }
        self.tolerances.insert(key, value);
        Ok(())
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<(), ConfigError> {
        if !o.alphas.is_empty() {
            self.alphas = o.alphas.clone();
        }
        if !o.epsilons.is_empty() {
            self.epsilons = o.epsilons.clone();
        }
        if let Some(d) = &o.out_dir {
            self.out_dir = Some(d.clone());
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        for (k, v) in &o.tolerances {
            self.set_tolerance(&format!("--tol {k}"), k.clone(), *v)?;
        }
        Ok(())
    }

    /// Defaults, then `file` if given, then `overrides`; validated.
    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| err("--config", format!("cannot read {}: {e}", path.display())))?;
            cfg.merge_toml(&text)?;
        }
        cfg.apply(overrides)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.field_count == 0 {
            return Err(err("field_count", "must be at least 1"));
        }
        check_grid("grid", self.grid.extent, self.grid.n)?;
        check_grid("quantum", self.quantum.extent, self.quantum.n)?;
        if self.quantum.n_max == 0 || self.quantum.n_max > 200 {
            return Err(err("quantum.n_max", format!("must be in 1..=200, got {}", self.quantum.n_max)));
        }
        if !(self.quantum.damping > 0.0) || !self.quantum.damping.is_finite() {
            return Err(err("quantum.damping", format!("must be positive, got {}", self.quantum.damping)));
        }
        check_angles("alphas", &self.alphas)?;
        check_angles("hermite_alphas", &self.hermite_alphas)?;
        if self.epsilons.is_empty() {
            return Err(err("epsilons", "need at least one damping value"));
        }
        for (i, e) in self.epsilons.iter().enumerate() {
            if !(*e > 0.0) || !e.is_finite() {
                return Err(err(format!("epsilons[{i}]"), format!("must be > 0, got {e}")));
            }
            if *e < 1e-3 {
                return Err(err(
                    format!("epsilons[{i}]"),
                    format!("{e} needs a quadrature grid beyond desk scale; use >= 1e-3"),
                ));
            }
        }
        for (k, v) in &self.tolerances {
            if !(*v >= 0.0) {
                return Err(err(format!("tolerances.{k}"), format!("must be >= 0, got {v}")));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self, key: &str) -> f64 {
        self.tolerances[key]
    }
}

fn check_grid(path: &str, extent: f64, n: usize) -> Result<(), ConfigError> {
    if !(extent > 0.0) || !extent.is_finite() {
        return Err(err(format!("{path}.extent"), format!("must be positive, got {extent}")));
    }
    if n < 2 {
        return Err(err(format!("{path}.n"), format!("must be >= 2, got {n}")));
    }
    Ok(())
}

fn check_angles(path: &str, alphas: &[f64]) -> Result<(), ConfigError> {
    if alphas.is_empty() {
        return Err(err(path, "need at least one angle"));
    }
    for (i, a) in alphas.iter().enumerate() {
        let s = a.sin().abs();
        if !a.is_finite() || s < psxform::closedform::SIN_GUARD {
            return Err(err(format!("{path}[{i}]"), format!("|sin(alpha)| = {s:.4} < 0.1 for alpha = {a} (radians)")));
        }
    }
    Ok(())
}

/// Best-effort dotted path of the key a TOML error points at.
fn toml_error_path(text: &str, e: &toml::de::Error) -> String {
    let Some(span) = e.span() else {
        return "<file>".into();
    };
    let mut table = String::new();
    let mut keys: Vec<String> = Vec::new();
    for (offset, line) in line_offsets(text) {
        if offset > span.start {
            break;
        }
        let trimmed = line.trim();
        if trimmed.starts_with('[') {
            table = trimmed.trim_matches(|c| c == '[' || c == ']').trim().to_string();
            keys.clear();
            continue;
        }
        // Keys leading up to the error position, descending into inline tables.
        let end = (span.start - offset).min(line.len());
        let prefix = line.get(..end).unwrap_or(line);
        let found: Vec<String> = prefix
            .split('{')
            .filter_map(|seg| {
                seg.rsplit(',').next()?.split_once('=').map(|(k, _)| k.trim().trim_matches('"').to_string())
            })
            .filter(|k| !k.is_empty())
            .collect();
        if !found.is_empty() {
            keys = found;
        }
    }
    let mut parts: Vec<String> = Vec::new();
    if !table.is_empty() {
        parts.push(table);
    }
    parts.extend(keys);
    if parts.is_empty() {
        "<file>".into()
    } else {
        parts.join(".")
    }
}

fn line_offsets(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split_inclusive('\n').map(move |line| {
        let start = offset;
        offset += line.len();
        (start, line)
    })
}
