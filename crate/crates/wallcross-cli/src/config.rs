use std::path::Path;

use serde::Deserialize;
use wallcross::lattice::{DivisorClass, SurfaceSpec};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Half the Kotschick–Morgan μ-map.
    #[default]
    #[serde(alias = "paper")]
    Standard,
    /// Kotschick–Morgan μ-map: degree-e terms scaled by 2^e.
    Km,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[serde(alias = "markdown")]
    #[value(alias = "markdown")]
    Md,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    /// Sums over engine-computed intersection numbers.
    #[default]
    Engine,
    /// Tabulated closed forms (ℓ ≤ 2).
    Closed,
}

/// One batch job, read from `--config`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub surface: SurfaceSpec,
    #[serde(default)]
    pub delta: Option<Vec<i64>>,
    #[serde(default)]
    pub c: Option<i64>,
    #[serde(rename = "L_minus", default)]
    pub l_minus: Option<Vec<i64>>,
    #[serde(rename = "L_plus", default)]
    pub l_plus: Option<Vec<i64>>,
    #[serde(default)]
    pub alpha: Option<Vec<i64>>,
    #[serde(default)]
    pub insert_point: bool,
    #[serde(default)]
    pub normalization: Normalization,
    #[serde(default)]
    pub output: Option<Format>,
    #[serde(default)]
    pub formula: Option<Formula>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    fn need(&self, field: &'static str, v: &Option<Vec<i64>>) -> Result<DivisorClass, CliError> {
        v.clone()
            .map(DivisorClass::new)
            .ok_or(CliError::MissingField(field))
    }

    pub fn delta(&self) -> Result<DivisorClass, CliError> {
        self.need("delta", &self.delta)
    }

    pub fn c(&self) -> Result<i64, CliError> {
        self.c.ok_or(CliError::MissingField("c"))
    }

    pub fn l_minus(&self) -> Result<DivisorClass, CliError> {
        self.need("L_minus", &self.l_minus)
    }

    pub fn l_plus(&self) -> Result<DivisorClass, CliError> {
        self.need("L_plus", &self.l_plus)
    }

    pub fn alpha(&self) -> Result<DivisorClass, CliError> {
        self.need("alpha", &self.alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_running_example() {
        let cfg: JobConfig = serde_json::from_str(
            r#"{"surface": {"preset": "BlP2", "params": {"n": 1}},
                "delta": [1, 0], "c": 2, "L_minus": [3, -2], "L_plus": [3, -1],
                "alpha": [1, 0], "output": "markdown"}"#,
        )
        .unwrap();
        assert_eq!(cfg.c().unwrap(), 2);
        assert_eq!(cfg.output, Some(Format::Md));
        assert_eq!(cfg.normalization, Normalization::Standard);
        assert!(!cfg.insert_point);
    }

    #[test]
    fn rejects_unknown_fields() {
        let r: Result<JobConfig, _> =
            serde_json::from_str(r#"{"surface": {"preset": "P2"}, "bogus": 1}"#);
        assert!(r.is_err());
    }

    #[test]
    fn missing_field_is_reported() {
        let cfg: JobConfig = serde_json::from_str(r#"{"surface": {"preset": "P2"}}"#).unwrap();
        assert!(matches!(cfg.delta(), Err(CliError::MissingField("delta"))));
    }
}
