//! Reports: JSON is canonical, CSV mirrors one row per check.
//!
//! A case passes iff every one of its checks passes, and a check's verdict
//! follows from its recorded `measured`, `target` and `tolerance` alone.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `measured <= target + tolerance`.
    AtMost,
    /// `measured >= target - tolerance`.
    AtLeast,
    /// `|measured - target| <= tolerance`.
    Near,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub quantity: String,
    pub measured: f64,
    pub relation: Relation,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(quantity: &str, measured: f64, relation: Relation, target: f64, tolerance: f64) -> Self {
        let pass = match relation {
            Relation::AtMost => measured <= target + tolerance,
            Relation::AtLeast => measured >= target - tolerance,
            Relation::Near => (measured - target).abs() <= tolerance,
        };
        Self {
            quantity: quantity.into(),
            measured,
            relation,
            target,
            tolerance,
            pass,
        }
    }

    /// A boolean outcome recorded as `measured ∈ {0, 1}` against target 1.
    pub fn flag(quantity: &str, value: bool) -> Self {
        Self::new(quantity, if value { 1.0 } else { 0.0 }, Relation::AtLeast, 1.0, 0.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub index: usize,
    pub label: String,
    /// SHA-256 of the case inputs, including sampled data where present.
    pub inputs_digest: String,
    pub inputs: serde_json::Value,
    pub checks: Vec<Check>,
    /// Auxiliary measurements not entering the verdict.
    pub values: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

impl CaseRecord {
    pub fn new(index: usize, label: String, inputs: serde_json::Value, digest: InputDigest) -> Self {
        let inputs_digest = digest.with_json(&inputs).finish();
        Self {
            index,
            label,
            inputs_digest,
            inputs,
            checks: Vec::new(),
            values: BTreeMap::new(),
            error: None,
            pass: false,
        }
    }

    pub fn check(mut self, c: Check) -> Self {
        self.checks.push(c);
        self
    }

    pub fn value(mut self, key: &str, v: f64) -> Self {
        self.values.insert(key.into(), v);
        self
    }

    pub fn finish(mut self) -> Self {
        self.pass = self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn failed(mut self, error: String) -> Self {
        self.error = Some(error);
        self.pass = false;
        self
    }
}

/// Incremental SHA-256 over case inputs.
#[derive(Clone, Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_json(mut self, v: &serde_json::Value) -> Self {
        self.0.update(v.to_string().as_bytes());
        self
    }

    pub fn with_samples(mut self, data: &[f64]) -> Self {
        for v in data {
            self.0.update(v.to_le_bytes());
        }
        self
    }

    pub fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub pass: bool,
    pub cases: usize,
    pub failures: usize,
    /// Largest measured ratio for ratio-type suites.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fitted_slopes: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<mnns_core::mild::ContractionCertificate>,
    pub values: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: ExperimentConfig,
    /// SHA-256 of the canonical TOML of the effective configuration.
    pub config_digest: String,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    pub wall_clock_seconds: f64,
}

pub fn config_digest(cfg: &ExperimentConfig) -> String {
    hex::encode(Sha256::digest(cfg.to_toml().as_bytes()))
}

impl Report {
    pub fn new(cfg: &ExperimentConfig, cases: Vec<CaseRecord>, mut summary: Summary) -> Self {
        summary.cases = cases.len();
        summary.failures = cases.iter().filter(|c| !c.pass).count();
        summary.pass = !cases.is_empty() && summary.failures == 0;
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: cfg.clone(),
            config_digest: config_digest(cfg),
            cases,
            summary,
            wall_clock_seconds: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["case", "label", "quantity", "measured", "relation", "target", "tolerance", "pass"])
            .expect("in-memory write");
        for c in &self.cases {
            let index = c.index.to_string();
            if c.checks.is_empty() {
                w.write_record([index.as_str(), &c.label, "error", "", "", "", "", "false"])
                    .expect("in-memory write");
            }
            for k in &c.checks {
                let rel = match k.relation {
                    Relation::AtMost => "at_most",
                    Relation::AtLeast => "at_least",
                    Relation::Near => "near",
                };
                w.write_record([
                    index.clone(),
                    c.label.clone(),
                    k.quantity.clone(),
                    format!("{:e}", k.measured),
                    rel.into(),
                    format!("{:e}", k.target),
                    format!("{:e}", k.tolerance),
                    k.pass.to_string(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 records")
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        std::fs::write(dir.join("report.json"), self.to_json()).map_err(io)?;
        std::fs::write(dir.join("report.csv"), self.to_csv()).map_err(io)?;
        Ok(())
    }
}
