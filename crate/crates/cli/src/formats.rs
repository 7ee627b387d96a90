//! Text formats for emitted data.
//!
//! CSV values use the shortest representation that round-trips to the same
//! `f64`; human-facing tables use six significant digits.

use std::fmt::Write as _;

use nclab::observables::SectorEnergySeries;
use nclab::wigner::StarResidual;
use nclab::{PhaseState, Trajectory};
use serde::Serialize;

pub const TRAJECTORY_HEADER: &str = "t,Omega_t,Q1,Q2,P1,P2";
pub const SERIES_HEADER: &str = "Omega_t,xi1_over_hOmega,xi2_over_hOmega,source";
pub const WIGNER_HEADER: &str = "Q1,Q2,P1,P2,rho";
pub const FIGURE2_HEADER: &str = "Omega_t,xidot1_over_hOmega2,amplitude_line";

/// Round-trip decimal text for `x`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// `%g`-style text with six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_zeros(&s).to_string()
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        format!("{}e{}", trim_zeros(mantissa), e)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn row(out: &mut String, cells: &[f64]) {
    for (k, c) in cells.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&num(*c));
    }
}

/// Trajectory CSV; `omega_big` converts `t` to the `Omega_t` column.
pub fn trajectory_csv(points: &[(f64, PhaseState)], omega_big: f64) -> String {
    let mut out = String::with_capacity(96 * (points.len() + 1));
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for (t, s) in points {
        row(&mut out, &[*t, omega_big * t, s.q1, s.q2, s.p1, s.p2]);
        out.push('\n');
    }
    out
}

pub fn numeric_trajectory_csv(traj: &Trajectory) -> String {
    trajectory_csv(&traj.points, traj.constants.omega_big)
}

pub fn series_csv(series: &SectorEnergySeries) -> String {
    let tag = series.source.as_str();
    let mut out = String::with_capacity(72 * (series.len() + 1));
    out.push_str(SERIES_HEADER);
    out.push('\n');
    for k in 0..series.len() {
        row(&mut out, &[series.times[k], series.xi1[k], series.xi2[k]]);
        out.push(',');
        out.push_str(tag);
        out.push('\n');
    }
    out
}

/// `(point, ρ)` rows.
pub fn wigner_csv(rows: &[(PhaseState, f64)]) -> String {
    let mut out = String::with_capacity(96 * (rows.len() + 1));
    out.push_str(WIGNER_HEADER);
    out.push('\n');
    for (p, rho) in rows {
        row(&mut out, &[p.q1, p.q2, p.p1, p.p2, *rho]);
        out.push('\n');
    }
    out
}

/// `(Ωt, ξ̇₁/ħΩ²)` rows with the constant amplitude line.
pub fn figure2_csv(rows: &[(f64, f64)], amplitude: f64) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(FIGURE2_HEADER);
    out.push('\n');
    for (wt, v) in rows {
        row(&mut out, &[*wt, *v, amplitude]);
        out.push('\n');
    }
    out
}

/// One entry of a Wigner residual report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub point: [f64; 4],
    pub n1: u32,
    pub n2: u32,
    pub residual_re: f64,
    pub residual_im: f64,
    pub rel: f64,
}

impl ResidualRecord {
    pub fn new(point: &PhaseState, n1: u32, n2: u32, r: &StarResidual) -> Self {
        ResidualRecord {
            point: point.to_array(),
            n1,
            n2,
            residual_re: r.re,
            residual_im: r.im,
            rel: r.rel(),
        }
    }
}

/// Two-column `name  value` table.
pub fn table(rows: &[(String, f64)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {}", sig6(*v));
    }
    out
}
