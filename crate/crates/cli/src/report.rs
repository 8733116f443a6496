use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::config::RunConfig;

/// One checked residual.
#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub name: String,
    /// The identity under test, written out.
    pub anchor: String,
    /// Configuration key of the tolerance.
    pub tolerance_key: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: f64,
}

impl Case {
    /// Times `f` and compares its residual against the configured tolerance.
    /// An error inside `f` becomes a failing case with a NaN residual.
    pub fn run<F>(cfg: &RunConfig, key: &str, name: impl Into<String>, anchor: &str, f: F) -> Self
    where
        F: FnOnce() -> psxform::Result<f64>,
    {
        let start = Instant::now();
        let name = name.into();
        let residual = match f() {
            Ok(r) => r,
            Err(e) => {
                log::error!("{key} / {name}: {e}");
                f64::NAN
            }
        };
        let tolerance = cfg.tolerance(key);
        Self {
            name,
            anchor: anchor.to_string(),
            tolerance_key: key.to_string(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn new(name: &str, anchor: &str, cases: Vec<Case>) -> Self {
        Self {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass: !cases.is_empty() && cases.iter().all(|c| c.pass),
            cases,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub suites: Vec<SuiteReport>,
    pub overall_pass: bool,
    pub config_echo: RunConfig,
}

impl VerificationReport {
    pub fn new(suite: &str, suites: Vec<SuiteReport>, config: &RunConfig) -> Self {
        Self {
            suite: suite.to_string(),
            overall_pass: !suites.is_empty() && suites.iter().all(|s| s.pass),
            suites,
            config_echo: config.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Writes `<dir>/<suite>.json` and returns its path.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", self.suite));
        std::fs::write(&path, self.to_json() + "\n")?;
        Ok(path)
    }

    /// Console summary, one line per case.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            for c in &s.cases {
                out.push_str(&format!(
                    "{} {:<16} {:<48} residual {:>10.3e}  tol {:>8.1e}  {:>9.1} ms\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    s.name,
                    c.name,
                    c.residual,
                    c.tolerance,
                    c.runtime_ms
                ));
            }
        }
        out.push_str(&format!(
            "{}: {} of {} suites passed\n",
            if self.overall_pass { "OK" } else { "FAILED" },
            self.suites.iter().filter(|s| s.pass).count(),
            self.suites.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_residual_within_tolerance() {
        let cfg = RunConfig::default();
        let ok = Case::run(&cfg, "parseval", "small", "a", || Ok(1e-9));
        let bad = Case::run(&cfg, "parseval", "large", "a", || Ok(1.0));
        let nan = Case::run(&cfg, "parseval", "nan", "a", || Ok(f64::NAN));
        let failed = Case::run(&cfg, "parseval", "err", "a", || Err(psxform::Error::InvalidParameter("x".into())));
        assert!(ok.pass && !bad.pass && !nan.pass && !failed.pass);
        assert!(failed.residual.is_nan());

        let suite = SuiteReport::new("parseval", "a", vec![ok.clone()]);
        assert!(suite.pass);
        let report = VerificationReport::new("parseval", vec![suite, SuiteReport::new("x", "b", vec![bad])], &cfg);
        assert!(!report.overall_pass);
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["overall_pass"], false);
        assert_eq!(json["suites"][0]["cases"][0]["pass"], true);
        assert!(json["config_echo"]["alphas"].is_array());
    }
}
