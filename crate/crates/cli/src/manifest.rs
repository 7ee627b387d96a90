//! Run manifests and the output sink that feeds them.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use nclab::{DerivedConstants, GaugeChoice, PhysicalParams, RatioSpec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{RunConfig, Settings};
use crate::error::{CliError, Result};
use crate::TOOL_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandRecord {
    pub name: String,
    /// Effective configuration after flags were applied.
    pub args: RunConfig,
}

/// A named invariant check and the value it was judged on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `value ≤ tolerance`.
    pub fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            pass: value <= tolerance,
            value,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputFile {
    /// Path relative to the manifest's directory.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: CommandRecord,
    pub params: PhysicalParams,
    pub ratio_spec: Option<RatioSpec>,
    pub gauge: GaugeChoice,
    pub dc: DerivedConstants,
    pub measured_constants: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub outputs: Vec<OutputFile>,
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` overrides the clock.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.clone())
            .collect()
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn timestamp() -> u64 {
    if let Some(v) = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        return v;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Collects files, measured constants and checks for one manifest.
#[derive(Debug)]
pub struct Run {
    dir: PathBuf,
    command: String,
    args: RunConfig,
    settings: Settings,
    measured: BTreeMap<String, f64>,
    checks: Vec<Check>,
    outputs: Vec<OutputFile>,
}

impl Run {
    pub fn new(dir: &Path, command: &str, args: &RunConfig, settings: &Settings) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Run {
            dir: dir.to_path_buf(),
            command: command.to_string(),
            args: args.clone(),
            settings: *settings,
            measured: BTreeMap::new(),
            checks: Vec::new(),
            outputs: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Writes `contents` to `name` and records its hash.
    pub fn emit(&mut self, name: &str, contents: &[u8]) -> Result<PathBuf> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.outputs.push(OutputFile {
            path: name.to_string(),
            sha256: sha256_hex(contents),
            bytes: contents.len() as u64,
        });
        Ok(path)
    }

    pub fn measure(&mut self, name: &str, value: f64) {
        self.measured.insert(name.to_string(), value);
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    /// Writes `<command>.manifest.json` and returns the manifest.
    pub fn finish(self) -> Result<(RunManifest, PathBuf)> {
        let s = self.settings;
        let manifest = RunManifest {
            tool_version: TOOL_VERSION.to_string(),
            command: CommandRecord {
                name: self.command.clone(),
                args: self.args,
            },
            params: s.params,
            ratio_spec: s.ratio_spec,
            gauge: s.gauge,
            dc: s.dc,
            measured_constants: self.measured,
            checks: self.checks,
            outputs: self.outputs,
            timestamp: timestamp(),
        };
        let path = self.dir.join(format!("{}.manifest.json", self.command));
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok((manifest, path))
    }
}
