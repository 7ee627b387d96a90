//! Energy observables.
//!
//! Two different energies live here and are never mixed:
//!
//! * the commutative-frame *mode* energy `E_i = α²Q_i² + β²Π_i²`, which
//!   beats slowly at frequency `2γ`;
//! * the noncommutative-frame *sector* energy
//!   `ξ_i = p_i²/2m + mω²q_i²/2`, which additionally oscillates at `2Ω`.
//!
//! Closed forms and trajectory compositions are implemented separately so
//! each can serve as the other's check.

use alloc::vec::Vec;

use crate::algebra::{sw_to_nc, DerivedConstants, GaugeChoice, NcState, PhysicalParams};
use crate::dynamics::{propagate_analytic, InitialConditions, PhaseState};
use crate::error::Error;
use crate::math::{abs, sin_cos, sqrt};
use crate::Result;

/// Which of the two Cartesian sectors (`x` ↔ 1, `y` ↔ 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Sector {
    One,
    Two,
}

impl Sector {
    pub const BOTH: [Sector; 2] = [Sector::One, Sector::Two];

    /// `(−1)^i`.
    pub fn parity(self) -> f64 {
        match self {
            Sector::One => -1.0,
            Sector::Two => 1.0,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Sector::One => 1,
            Sector::Two => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Sector> {
        match i {
            1 => Some(Sector::One),
            2 => Some(Sector::Two),
            _ => None,
        }
    }
}

/// Initial conditions `x = y = sqrt(βħ/2α)`, `π_x = π_y = sqrt(αħ/2β)`.
pub fn ground_mode_ic(dc: &DerivedConstants, hbar: f64) -> InitialConditions {
    let x = sqrt(dc.beta * hbar / (2.0 * dc.alpha));
    let pi = sqrt(dc.alpha * hbar / (2.0 * dc.beta));
    InitialConditions::new(x, x, pi, pi)
}

/// Commutative-frame mode energy `αβ[(α/β)Q_i² + (β/α)Π_i²]`.
pub fn mode_energy(s: &PhaseState, dc: &DerivedConstants, sector: Sector) -> f64 {
    let (q, p) = match sector {
        Sector::One => (s.q1, s.p1),
        Sector::Two => (s.q2, s.p2),
    };
    dc.alpha * dc.beta * (dc.alpha_over_beta() * q * q + dc.beta_over_alpha() * p * p)
}

/// Beating law `(ħΩ/2)(1 − (−1)^i sin 2γt)` for ground-mode initial conditions.
pub fn mode_energy_closed(dc: &DerivedConstants, hbar: f64, t: f64, sector: Sector) -> f64 {
    let (s2g, _) = sin_cos(2.0 * dc.gamma * t);
    0.5 * hbar * dc.omega_big * (1.0 - sector.parity() * s2g)
}

/// Sector energy `p_i²/2m + mω²q_i²/2` in the noncommutative frame.
pub fn sector_energy(nc: &NcState, params: &PhysicalParams, sector: Sector) -> f64 {
    let (q, p) = match sector {
        Sector::One => (nc.q1, nc.p1),
        Sector::Two => (nc.q2, nc.p2),
    };
    p * p / (2.0 * params.m) + 0.5 * params.m * params.omega * params.omega * q * q
}

/// Signed coupling asymmetry `κ = (η/m − mω²θ)/(2ħΩ)`.
///
/// `|κ| = sqrt(1 − ω²/Ω²)`. Composing the exact trajectory with the SW map
/// produces the time-crystal term with coefficient `κ`, so the unsigned
/// closed form [`xi_closed`] agrees with the composition only when `κ ≥ 0`.
pub fn coupling_asymmetry(params: &PhysicalParams, dc: &DerivedConstants) -> f64 {
    let (from_theta, from_eta) = params.gamma_parts();
    (from_eta - from_theta) / dc.omega_big
}

/// `k₁(cos2γt cos2Ωt − (γ/Ω) sin2γt sin2Ωt) + k₂ sin2γt`.
fn bracket(dc: &DerivedConstants, t: f64, k1: f64, k2: f64) -> f64 {
    let (s2g, c2g) = sin_cos(2.0 * dc.gamma * t);
    let (s2o, c2o) = sin_cos(2.0 * dc.omega_big * t);
    k1 * (c2g * c2o - dc.ratio() * s2g * s2o) + k2 * s2g
}

/// Time derivative of [`bracket`].
fn bracket_dot(dc: &DerivedConstants, t: f64, k1: f64, k2: f64) -> f64 {
    let (g, big) = (dc.gamma, dc.omega_big);
    let (s2g, c2g) = sin_cos(2.0 * g * t);
    let (s2o, c2o) = sin_cos(2.0 * big * t);
    k1 * (-4.0 * g * s2g * c2o - 2.0 * (big + g * g / big) * c2g * s2o) + 2.0 * g * k2 * c2g
}

/// The two radicands of the time-crystal closed form:
/// `(1 − ω²/Ω², 1 − γ²/Ω²)`.
///
/// `1 − ω²/Ω²` is evaluated as `(γ_η − γ_θ)²/Ω²`, which equals it exactly
/// for consistent constants and avoids cancellation when `Ω ≈ ω`.
fn radicands(dc: &DerivedConstants, params: &PhysicalParams) -> Result<(f64, f64)> {
    let big = dc.omega_big;
    const SLACK: f64 = 1e-12;
    if big < params.omega * (1.0 - SLACK) {
        return Err(Error::DomainError("1 - omega^2/Omega^2 < 0"));
    }
    if big < abs(dc.gamma) * (1.0 - SLACK) {
        return Err(Error::DomainError("1 - gamma^2/Omega^2 < 0"));
    }
    let kappa = coupling_asymmetry(params, dc);
    let r = dc.ratio();
    Ok((kappa * kappa, (1.0 - r * r).max(0.0)))
}

/// Time-crystal closed form for the sector energies.
///
/// `ξ_i = (ħΩ/2){1 − (−1)^i[sqrt(1−ω²/Ω²)(cos2γt cos2Ωt − (γ/Ω) sin2γt sin2Ωt)
///        + (ω/Ω) sqrt(1−γ²/Ω²) sin2γt]}`.
pub fn xi_closed(
    dc: &DerivedConstants,
    params: &PhysicalParams,
    t: f64,
    sector: Sector,
) -> Result<f64> {
    let (r1, r2) = radicands(dc, params)?;
    let k1 = sqrt(r1);
    let k2 = params.omega / dc.omega_big * sqrt(r2);
    Ok(0.5 * params.hbar * dc.omega_big * (1.0 - sector.parity() * bracket(dc, t, k1, k2)))
}

/// Analytic time derivative of [`xi_closed`].
pub fn xi_dot_closed(
    dc: &DerivedConstants,
    params: &PhysicalParams,
    t: f64,
    sector: Sector,
) -> Result<f64> {
    let (r1, r2) = radicands(dc, params)?;
    let k1 = sqrt(r1);
    let k2 = params.omega / dc.omega_big * sqrt(r2);
    Ok(-0.5 * params.hbar * dc.omega_big * sector.parity() * bracket_dot(dc, t, k1, k2))
}

/// [`xi_closed`] with `sqrt(1 − ω²/Ω²)` replaced by the signed
/// [`coupling_asymmetry`]. This is exactly the trajectory composition for
/// ground-mode initial conditions, for any sign of `η/m − mω²θ`.
pub fn xi_closed_signed(
    dc: &DerivedConstants,
    params: &PhysicalParams,
    t: f64,
    sector: Sector,
) -> Result<f64> {
    let (_, r2) = radicands(dc, params)?;
    let k1 = coupling_asymmetry(params, dc);
    let k2 = params.omega / dc.omega_big * sqrt(r2);
    Ok(0.5 * params.hbar * dc.omega_big * (1.0 - sector.parity() * bracket(dc, t, k1, k2)))
}

/// Closed form valid when `θη = 0`, i.e. `Ω² = ω² + γ²`.
pub fn xi_closed_degenerate(
    dc: &DerivedConstants,
    params: &PhysicalParams,
    t: f64,
    sector: Sector,
) -> Result<f64> {
    let theta_eta = params.theta * params.eta;
    if theta_eta != 0.0 {
        return Err(Error::DegenerateFormMisuse { theta_eta });
    }
    Ok(xi_degenerate_unchecked(dc, params.hbar, t, sector))
}

fn xi_degenerate_unchecked(dc: &DerivedConstants, hbar: f64, t: f64, sector: Sector) -> f64 {
    let r = dc.ratio();
    0.5 * hbar * dc.omega_big * (1.0 - sector.parity() * bracket(dc, t, r, 1.0 - r * r))
}

/// First order in `γ`: `(ħΩ/2)[1 − (−1)^i (γ/Ω)(2Ωt + cos 2Ωt)]`.
pub fn xi_first_order(dc: &DerivedConstants, t: f64, sector: Sector, hbar: f64) -> f64 {
    let big = dc.omega_big;
    let (_, c2o) = sin_cos(2.0 * big * t);
    0.5 * hbar * big * (1.0 - sector.parity() * dc.ratio() * (2.0 * big * t + c2o))
}

/// `(−1)^{i+1} ħγΩ[1 − sin 2Ωt]`; oscillation amplitude `ħγΩ`.
pub fn xi_dot_first_order(dc: &DerivedConstants, t: f64, sector: Sector, hbar: f64) -> f64 {
    let (s2o, _) = sin_cos(2.0 * dc.omega_big * t);
    -sector.parity() * hbar * dc.gamma * dc.omega_big * (1.0 - s2o)
}

/// Exact propagation, SW map to the noncommutative frame, then the sector energy.
pub fn xi_trajectory(
    ic: &InitialConditions,
    dc: &DerivedConstants,
    params: &PhysicalParams,
    gauge: &GaugeChoice,
    t: f64,
    sector: Sector,
) -> f64 {
    let s = propagate_analytic(ic, dc, t);
    sector_energy(&sw_to_nc(&s, params, gauge), params, sector)
}

/// Where a [`SectorEnergySeries`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SeriesSource {
    ClosedForm,
    DegenerateForm,
    FirstOrder,
    Trajectory,
}

impl SeriesSource {
    pub const ALL: [SeriesSource; 4] = [
        SeriesSource::ClosedForm,
        SeriesSource::DegenerateForm,
        SeriesSource::FirstOrder,
        SeriesSource::Trajectory,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SeriesSource::ClosedForm => "closed_form",
            SeriesSource::DegenerateForm => "degenerate_form",
            SeriesSource::FirstOrder => "first_order",
            SeriesSource::Trajectory => "trajectory",
        }
    }

    pub fn parse(s: &str) -> Option<SeriesSource> {
        SeriesSource::ALL.into_iter().find(|src| src.as_str() == s)
    }
}

/// Uniform grid in dimensionless time `Ωt`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaTimeGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl OmegaTimeGrid {
    pub fn new(start: f64, end: f64, points: usize) -> Self {
        OmegaTimeGrid { start, end, points }
    }

    pub fn at(&self, k: usize) -> f64 {
        if self.points < 2 {
            return self.start;
        }
        self.start + (self.end - self.start) * (k as f64 / (self.points - 1) as f64)
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |k| self.at(k))
    }
}

/// `ξ₁, ξ₂` in units of `ħΩ` on an `Ωt` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorEnergySeries {
    pub times: Vec<f64>,
    pub xi1: Vec<f64>,
    pub xi2: Vec<f64>,
    pub source: SeriesSource,
}

impl SectorEnergySeries {
    /// Evaluates `source` on `grid`. Trajectory series start from
    /// [`ground_mode_ic`].
    pub fn generate(
        source: SeriesSource,
        params: &PhysicalParams,
        gauge: &GaugeChoice,
        dc: &DerivedConstants,
        grid: &OmegaTimeGrid,
    ) -> Result<Self> {
        let unit = params.hbar * dc.omega_big;
        let ic = ground_mode_ic(dc, params.hbar);
        let eval = |t: f64, s: Sector| -> Result<f64> {
            match source {
                SeriesSource::ClosedForm => xi_closed(dc, params, t, s),
                SeriesSource::DegenerateForm => xi_closed_degenerate(dc, params, t, s),
                SeriesSource::FirstOrder => Ok(xi_first_order(dc, t, s, params.hbar)),
                SeriesSource::Trajectory => Ok(xi_trajectory(&ic, dc, params, gauge, t, s)),
            }
        };
        let mut out = SectorEnergySeries {
            times: Vec::with_capacity(grid.points),
            xi1: Vec::with_capacity(grid.points),
            xi2: Vec::with_capacity(grid.points),
            source,
        };
        for wt in grid.iter() {
            let t = wt / dc.omega_big;
            out.times.push(wt);
            out.xi1.push(eval(t, Sector::One)? / unit);
            out.xi2.push(eval(t, Sector::Two)? / unit);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `max_k |ξ₁ + ξ₂ − 1|` in units of `ħΩ`.
    pub fn partition_defect(&self) -> f64 {
        self.xi1
            .iter()
            .zip(&self.xi2)
            .fold(0.0, |m, (a, b)| m.max(abs(a + b - 1.0)))
    }

    /// Largest pointwise difference of either column against `other`.
    pub fn max_difference(&self, other: &SectorEnergySeries) -> f64 {
        let col =
            |a: &[f64], b: &[f64]| a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max(abs(x - y)));
        col(&self.xi1, &other.xi1).max(col(&self.xi2, &other.xi2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{derived_constants, make_gauge};
    use core::f64::consts::PI;

    fn setup(theta: f64, eta: f64) -> (PhysicalParams, GaugeChoice, DerivedConstants) {
        let p = PhysicalParams::new(1.0, 1.0, 1.0, theta, eta).unwrap();
        let g = make_gauge(&p, 1.0).unwrap();
        let dc = derived_constants(&p, &g);
        (p, g, dc)
    }

    #[test]
    fn ground_mode_symmetric_case() {
        let (_, _, dc) = setup(0.0, 0.0);
        let ic = ground_mode_ic(&dc, 1.0);
        let h = 0.5f64.sqrt();
        for v in [ic.x, ic.y, ic.pi_x, ic.pi_y] {
            assert!((v - h).abs() < 1e-15);
        }
    }

    #[test]
    fn ground_mode_ratio_two() {
        let dc = DerivedConstants {
            alpha: 2.0,
            beta: 1.0,
            gamma: 0.0,
            omega_big: 4.0,
            product_lm: 1.0,
        };
        let ic = ground_mode_ic(&dc, 1.0);
        assert!((ic.x - 0.5).abs() < 1e-15 && (ic.y - 0.5).abs() < 1e-15);
        assert!((ic.pi_x - 1.0).abs() < 1e-15 && (ic.pi_y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mode_energy_examples() {
        let (_, _, dc) = setup(0.004, 0.0);
        let ic = ground_mode_ic(&dc, 1.0);
        let half = 0.5 * dc.omega_big;
        for s in Sector::BOTH {
            assert!((mode_energy(&ic.state(), &dc, s) - half).abs() < 1e-15);
        }
        let t = PI / 4.0 / dc.gamma;
        let st = propagate_analytic(&ic, &dc, t);
        let (e1, e2) = (
            mode_energy(&st, &dc, Sector::One),
            mode_energy(&st, &dc, Sector::Two),
        );
        assert!((e1 - dc.omega_big).abs() < 1e-12);
        assert!(e2.abs() < 1e-12);
        assert!((e1 + e2 - dc.omega_big).abs() < 1e-12);
    }

    #[test]
    fn sector_energy_examples() {
        let p = PhysicalParams::commutative(1.0, 1.0, 1.0).unwrap();
        assert_eq!(sector_energy(&NcState::default(), &p, Sector::One), 0.0);
        assert_eq!(
            sector_energy(&NcState::new(1.0, 0.0, 1.0, 0.0), &p, Sector::One),
            1.0
        );
        let p = PhysicalParams::new(1.7, 0.6, 1.0, 0.0, 0.0).unwrap();
        let nc = NcState::new(0.4, -1.1, 0.9, 0.3);
        let h = (nc.p1 * nc.p1 + nc.p2 * nc.p2) / (2.0 * p.m)
            + 0.5 * p.m * p.omega * p.omega * (nc.q1 * nc.q1 + nc.q2 * nc.q2);
        let sum = sector_energy(&nc, &p, Sector::One) + sector_energy(&nc, &p, Sector::Two);
        assert!((sum - h).abs() < 1e-15);
    }

    #[test]
    fn closed_form_commutative_is_stationary() {
        let (p, _, dc) = setup(0.0, 0.0);
        for &t in &[0.0, 0.7, 13.0] {
            for s in Sector::BOTH {
                assert!((xi_closed(&dc, &p, t, s).unwrap() - 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn closed_form_at_t0() {
        let (p, _, dc) = setup(0.0, 0.3);
        let w = dc.omega_big;
        let root = (1.0 - 1.0 / (w * w)).sqrt();
        let x1 = xi_closed(&dc, &p, 0.0, Sector::One).unwrap();
        let x2 = xi_closed(&dc, &p, 0.0, Sector::Two).unwrap();
        assert!((x1 - 0.5 * w * (1.0 + root)).abs() < 1e-14);
        assert!((x2 - 0.5 * w * (1.0 - root)).abs() < 1e-14);
    }

    #[test]
    fn closed_form_domain_error() {
        let (p, _, mut dc) = setup(0.0, 0.0);
        dc.omega_big = 0.5;
        assert!(matches!(
            xi_closed(&dc, &p, 0.0, Sector::One),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn degenerate_form_examples() {
        let r = 0.002;
        let gamma = r / (1.0f64 - r * r).sqrt();
        let (p, _, dc) = setup(2.0 * gamma, 0.0);
        assert!((dc.ratio() - r).abs() < 1e-12);
        let unit = dc.omega_big;
        let x1 = xi_closed_degenerate(&dc, &p, 0.0, Sector::One).unwrap() / unit;
        let x2 = xi_closed_degenerate(&dc, &p, 0.0, Sector::Two).unwrap() / unit;
        assert!((x1 - 0.501).abs() < 1e-12);
        assert!((x2 - 0.499).abs() < 1e-12);

        let (p0, _, dc0) = setup(0.0, 0.0);
        assert!((xi_closed_degenerate(&dc0, &p0, 3.3, Sector::One).unwrap() - 0.5).abs() < 1e-15);

        let (ps, _, dcs) = setup(0.1, 0.1);
        assert!(matches!(
            xi_closed_degenerate(&dcs, &ps, 0.0, Sector::One),
            Err(Error::DegenerateFormMisuse { .. })
        ));
    }

    #[test]
    fn degenerate_agrees_with_general() {
        for (theta, eta) in [(0.004, 0.0), (0.0, 0.01), (0.3, 0.0), (0.0, 0.25)] {
            let (p, _, dc) = setup(theta, eta);
            for k in 0..50 {
                let t = 0.61 * k as f64;
                for s in Sector::BOTH {
                    let a = xi_closed(&dc, &p, t, s).unwrap();
                    let b = xi_closed_degenerate(&dc, &p, t, s).unwrap();
                    assert!((a - b).abs() < 1e-12, "{theta} {eta} {t}");
                }
            }
        }
    }

    #[test]
    fn first_order_examples() {
        let (_, _, dc0) = setup(0.0, 0.0);
        assert!((xi_first_order(&dc0, 4.0, Sector::One, 1.0) - 0.5).abs() < 1e-15);
        let (p, _, dc) = setup(0.0, 0.004);
        for s in Sector::BOTH {
            let a = xi_first_order(&dc, 0.0, s, 1.0);
            let b = xi_closed_degenerate(&dc, &p, 0.0, s).unwrap();
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn first_order_derivative_examples() {
        let (_, _, dc) = setup(0.004, 0.0);
        let amp = dc.gamma * dc.omega_big;
        assert!((xi_dot_first_order(&dc, 0.0, Sector::One, 1.0) - amp).abs() < 1e-18);
        assert!((xi_dot_first_order(&dc, 0.0, Sector::Two, 1.0) + amp).abs() < 1e-18);
        let t = PI / 4.0 / dc.omega_big;
        assert!(xi_dot_first_order(&dc, t, Sector::One, 1.0).abs() < 1e-18);
    }

    #[test]
    fn closed_derivative_matches_finite_difference() {
        for (theta, eta) in [(0.004, 0.0), (0.2, 0.3), (-0.2, 0.5)] {
            let (p, _, dc) = setup(theta, eta);
            let h = 1e-5;
            for k in 0..30 {
                let t = 0.83 * k as f64;
                for s in Sector::BOTH {
                    let fd = (xi_closed(&dc, &p, t + h, s).unwrap()
                        - xi_closed(&dc, &p, t - h, s).unwrap())
                        / (2.0 * h);
                    let an = xi_dot_closed(&dc, &p, t, s).unwrap();
                    assert!((fd - an).abs() < 1e-8, "{fd} {an}");
                }
            }
        }
    }

    #[test]
    fn trajectory_commutative_is_constant() {
        let (p, g, dc) = setup(0.0, 0.0);
        let ic = ground_mode_ic(&dc, 1.0);
        for &t in &[0.0, 1.0, 17.5] {
            for s in Sector::BOTH {
                assert!((xi_trajectory(&ic, &dc, &p, &g, t, s) - 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn signed_form_tracks_trajectory_for_either_sign() {
        for (theta, eta) in [
            (0.3, 0.0),
            (0.0, 0.3),
            (0.2, 0.05),
            (0.05, 0.2),
            (-0.1, 0.4),
        ] {
            let (p, g, dc) = setup(theta, eta);
            let ic = ground_mode_ic(&dc, 1.0);
            for k in 0..40 {
                let t = 0.77 * k as f64;
                for s in Sector::BOTH {
                    let a = xi_trajectory(&ic, &dc, &p, &g, t, s);
                    let b = xi_closed_signed(&dc, &p, t, s).unwrap();
                    assert!((a - b).abs() < 1e-12 * dc.omega_big);
                }
            }
        }
    }

    #[test]
    fn series_sources_roundtrip_names() {
        for s in SeriesSource::ALL {
            assert_eq!(SeriesSource::parse(s.as_str()), Some(s));
        }
        assert_eq!(SeriesSource::parse("bogus"), None);
        assert_eq!(Sector::from_index(3), None);
    }

    #[test]
    fn series_partition() {
        let (p, g, dc) = setup(0.0, 0.01);
        let grid = OmegaTimeGrid::new(0.0, 50.0, 501);
        let closed =
            SectorEnergySeries::generate(SeriesSource::ClosedForm, &p, &g, &dc, &grid).unwrap();
        let traj =
            SectorEnergySeries::generate(SeriesSource::Trajectory, &p, &g, &dc, &grid).unwrap();
        assert_eq!(closed.len(), 501);
        assert!(closed.partition_defect() < 1e-12);
        assert!(traj.partition_defect() < 1e-12);
        assert!(closed.max_difference(&traj) < 1e-9);
        assert_eq!(closed.times[500], 50.0);
    }
}
