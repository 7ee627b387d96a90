//! Run configuration: one JSON file, overridden key-for-key by flags.

use std::fs;
use std::path::Path;

use clap::Args;
use nclab::{
    derived_constants, make_gauge, params_from_ratio, DerivedConstants, GaugeChoice,
    InitialConditions, PhysicalParams, RatioMode, RatioSpec,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Every tunable of every command. Unset fields fall back to
/// per-command defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Mass.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    /// Oscillator frequency.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    /// Position noncommutativity.
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// Momentum noncommutativity.
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    /// Target γ/Ω; replaces theta and eta.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    /// single_theta, single_eta or symmetric.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// λ/μ.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauge_ratio: Option<f64>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    /// End time in units of 1/Ω.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    /// Integration step in units of 1/Ω.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Keep every n-th integration step.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stride: Option<usize>,
    /// analytic, rk4 or both.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// closed_form, degenerate_form, first_order, trajectory or all.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1: Option<u32>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<u32>,
    /// Figure number.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<u8>,
    /// Comma-separated sweep ratios.
    #[arg(long, global = true, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratios: Option<Vec<f64>>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Wigner slice plane: two of q1, q2, p1, p2, e.g. q1p2.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane: Option<String>,
    /// Number of random points for the Wigner residual report.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_points: Option<usize>,
    /// Comma-separated Gauss-Hermite node counts.
    #[arg(long, global = true, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_nodes: Option<Vec<usize>>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ic_x: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ic_y: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ic_pi_x: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ic_pi_y: Option<f64>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($f:ident),* $(,)?) => {
        RunConfig { $($f: $top.$f.or($base.$f)),* }
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        overlay!(base, top;
            m, omega, hbar, theta, eta, ratio, mode, gauge_ratio, grid_points, t_max, dt,
            stride, method, source, n1, n2, which, ratios, seed, plane, residual_points,
            quadrature_nodes, ic_x, ic_y, ic_pi_x, ic_pi_y,
        )
    }

    /// Loads `path` if given and applies `flags` on top.
    pub fn resolve(path: Option<&Path>, flags: RunConfig) -> Result<RunConfig> {
        let base = match path {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        Ok(base.overlay(flags))
    }

    pub fn ratio_mode(&self) -> Result<RatioMode> {
        match self.mode.as_deref() {
            None => Ok(RatioMode::SingleTheta),
            Some(s) => {
                RatioMode::parse(s).ok_or_else(|| CliError::Config(format!("unknown mode {s:?}")))
            }
        }
    }

    /// Builds the physical parameters, from `ratio` + `mode` when a ratio
    /// is present and from `theta`/`eta` otherwise.
    pub fn physical(&self) -> Result<(PhysicalParams, Option<RatioSpec>)> {
        let (m, omega, hbar) = (
            self.m.unwrap_or(1.0),
            self.omega.unwrap_or(1.0),
            self.hbar.unwrap_or(1.0),
        );
        match self.ratio {
            Some(ratio) => {
                if self.theta.is_some() || self.eta.is_some() {
                    return Err(CliError::Config(
                        "ratio and theta/eta are mutually exclusive".into(),
                    ));
                }
                let spec = RatioSpec {
                    ratio,
                    mode: self.ratio_mode()?,
                };
                Ok((params_from_ratio(&spec, m, omega, hbar)?, Some(spec)))
            }
            None => {
                let p = PhysicalParams::new(
                    m,
                    omega,
                    hbar,
                    self.theta.unwrap_or(0.0),
                    self.eta.unwrap_or(0.0),
                )?;
                Ok((p, None))
            }
        }
    }

    pub fn has_deformation(&self) -> bool {
        self.ratio.is_some() || self.theta.is_some() || self.eta.is_some()
    }

    pub fn settings(&self) -> Result<Settings> {
        let (params, ratio_spec) = self.physical()?;
        let gauge = make_gauge(&params, self.gauge_ratio.unwrap_or(1.0))?;
        let dc = derived_constants(&params, &gauge);
        Ok(Settings {
            params,
            ratio_spec,
            gauge,
            dc,
        })
    }

    /// Explicit initial conditions, if all four are set.
    pub fn initial_conditions(&self) -> Result<Option<InitialConditions>> {
        match (self.ic_x, self.ic_y, self.ic_pi_x, self.ic_pi_y) {
            (None, None, None, None) => Ok(None),
            (Some(x), Some(y), Some(px), Some(py)) => {
                Ok(Some(InitialConditions::new(x, y, px, py)))
            }
            _ => Err(CliError::Config(
                "ic_x, ic_y, ic_pi_x, ic_pi_y must be given together".into(),
            )),
        }
    }
}

/// Parameters, gauge and constants shared by every command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub params: PhysicalParams,
    pub ratio_spec: Option<RatioSpec>,
    pub gauge: GaugeChoice,
    pub dc: DerivedConstants,
}
