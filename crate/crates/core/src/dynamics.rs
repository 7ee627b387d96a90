//! Commutative-frame dynamics: equations of motion, the closed-form
//! solution, a fixed-step RK4 oracle and the two conserved quantities.

use alloc::vec::Vec;

use crate::algebra::DerivedConstants;
use crate::error::Error;
use crate::math::{abs, round, sin_cos};
use crate::Result;

/// Commutative-frame phase-space point `(Q₁, Q₂, Π₁, Π₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhaseState {
    pub q1: f64,
    pub q2: f64,
    pub p1: f64,
    pub p2: f64,
}

impl PhaseState {
    pub const ZERO: PhaseState = PhaseState {
        q1: 0.0,
        q2: 0.0,
        p1: 0.0,
        p2: 0.0,
    };

    pub fn new(q1: f64, q2: f64, p1: f64, p2: f64) -> Self {
        PhaseState { q1, q2, p1, p2 }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.q1, self.q2, self.p1, self.p2]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        PhaseState::new(a[0], a[1], a[2], a[3])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// `self + h·d`.
    pub fn add_scaled(&self, d: &PhaseState, h: f64) -> PhaseState {
        PhaseState {
            q1: self.q1 + h * d.q1,
            q2: self.q2 + h * d.q2,
            p1: self.p1 + h * d.p1,
            p2: self.p2 + h * d.p2,
        }
    }

    pub fn max_abs_diff(&self, other: &PhaseState) -> f64 {
        let (a, b) = (self.to_array(), other.to_array());
        (0..4).fold(0.0, |m, i| m.max(abs(a[i] - b[i])))
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&PhaseState::ZERO)
    }
}

/// The arbitrary constants `(x, y, π_x, π_y)` of the closed-form solution;
/// they coincide with the state at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InitialConditions {
    pub x: f64,
    pub y: f64,
    pub pi_x: f64,
    pub pi_y: f64,
}

impl InitialConditions {
    pub fn new(x: f64, y: f64, pi_x: f64, pi_y: f64) -> Self {
        InitialConditions { x, y, pi_x, pi_y }
    }

    pub fn state(&self) -> PhaseState {
        PhaseState::new(self.x, self.y, self.pi_x, self.pi_y)
    }
}

/// Right-hand side of the equations of motion.
///
/// Signs are those of Hamilton's equations for
/// `H = α²Q² + β²Π² + γ(Π₁Q₂ − Π₂Q₁)`, which is what the closed-form
/// solution differentiates to.
pub fn eom_rhs(s: &PhaseState, dc: &DerivedConstants) -> PhaseState {
    let two_a2 = 2.0 * dc.alpha * dc.alpha;
    let two_b2 = 2.0 * dc.beta * dc.beta;
    let g = dc.gamma;
    PhaseState {
        q1: two_b2 * s.p1 + g * s.q2,
        q2: two_b2 * s.p2 - g * s.q1,
        p1: -two_a2 * s.q1 + g * s.p2,
        p2: -two_a2 * s.q2 - g * s.p1,
    }
}

/// Closed-form state at time `t`.
pub fn propagate_analytic(ic: &InitialConditions, dc: &DerivedConstants, t: f64) -> PhaseState {
    let InitialConditions { x, y, pi_x, pi_y } = *ic;
    let (s_big, c_big) = sin_cos(dc.omega_big * t);
    let (s_g, c_g) = sin_cos(dc.gamma * t);
    let b_a = dc.beta_over_alpha();
    let a_b = dc.alpha_over_beta();
    PhaseState {
        q1: x * c_big * c_g + y * c_big * s_g + b_a * (pi_y * s_big * s_g + pi_x * s_big * c_g),
        q2: y * c_big * c_g - x * c_big * s_g - b_a * (pi_x * s_big * s_g - pi_y * s_big * c_g),
        p1: pi_x * c_big * c_g + pi_y * c_big * s_g - a_b * (y * s_big * s_g + x * s_big * c_g),
        p2: pi_y * c_big * c_g - pi_x * c_big * s_g + a_b * (x * s_big * s_g - y * s_big * c_g),
    }
}

/// Uniformly sampled trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// `(t, state)` pairs in increasing time.
    pub points: Vec<(f64, PhaseState)>,
    /// Integration step actually used.
    pub step: f64,
    /// Output stride in integration steps.
    pub stride: usize,
    pub constants: DerivedConstants,
}

impl Trajectory {
    pub fn last(&self) -> Option<&(f64, PhaseState)> {
        self.points.last()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn rk4_step(s: &PhaseState, dc: &DerivedConstants, h: f64) -> PhaseState {
    let k1 = eom_rhs(s, dc);
    let k2 = eom_rhs(&s.add_scaled(&k1, 0.5 * h), dc);
    let k3 = eom_rhs(&s.add_scaled(&k2, 0.5 * h), dc);
    let k4 = eom_rhs(&s.add_scaled(&k3, h), dc);
    PhaseState {
        q1: s.q1 + h / 6.0 * (k1.q1 + 2.0 * k2.q1 + 2.0 * k3.q1 + k4.q1),
        q2: s.q2 + h / 6.0 * (k1.q2 + 2.0 * k2.q2 + 2.0 * k3.q2 + k4.q2),
        p1: s.p1 + h / 6.0 * (k1.p1 + 2.0 * k2.p1 + 2.0 * k3.p1 + k4.p1),
        p2: s.p2 + h / 6.0 * (k1.p2 + 2.0 * k2.p2 + 2.0 * k3.p2 + k4.p2),
    }
}

/// Classical RK4 keeping every step.
pub fn integrate_numeric(
    ic: &InitialConditions,
    dc: &DerivedConstants,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    integrate_numeric_strided(ic, dc, t_end, dt, 1)
}

/// Classical RK4 from `ic` to `t_end`.
///
/// The step count is `round(t_end/dt)` (at least one) and the step is
/// adjusted to land exactly on `t_end`. Every `stride`-th step is stored,
/// plus the final state.
pub fn integrate_numeric_strided(
    ic: &InitialConditions,
    dc: &DerivedConstants,
    t_end: f64,
    dt: f64,
    stride: usize,
) -> Result<Trajectory> {
    if !(dt > 0.0) || !(t_end > 0.0) || !dt.is_finite() || !t_end.is_finite() {
        return Err(Error::InvalidStep);
    }
    let stride = stride.max(1);
    let n = (round(t_end / dt) as usize).max(1);
    let h = t_end / n as f64;
    let mut s = ic.state();
    let mut points = Vec::with_capacity(n / stride + 2);
    points.push((0.0, s));
    for k in 1..=n {
        s = rk4_step(&s, dc, h);
        if !s.is_finite() {
            return Err(Error::NonFiniteState { step: k });
        }
        if k % stride == 0 || k == n {
            points.push((k as f64 * h, s));
        }
    }
    Ok(Trajectory {
        points,
        step: h,
        stride,
        constants: *dc,
    })
}

/// The two conserved quantities `(Σ (α/β)Q_i² + (β/α)Π_i², Q₁Π₂ − Q₂Π₁)`.
pub fn invariant_pair(s: &PhaseState, dc: &DerivedConstants) -> (f64, f64) {
    let i1 = dc.alpha_over_beta() * (s.q1 * s.q1 + s.q2 * s.q2)
        + dc.beta_over_alpha() * (s.p1 * s.p1 + s.p2 * s.p2);
    let i2 = s.q1 * s.p2 - s.q2 * s.p1;
    (i1, i2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{derived_constants, make_gauge, PhysicalParams};
    use core::f64::consts::PI;

    fn dc_for(theta: f64, eta: f64) -> DerivedConstants {
        let p = PhysicalParams::new(1.0, 1.0, 1.0, theta, eta).unwrap();
        derived_constants(&p, &make_gauge(&p, 1.0).unwrap())
    }

    #[test]
    fn zero_state_has_zero_derivative() {
        assert_eq!(
            eom_rhs(&PhaseState::ZERO, &dc_for(0.3, 0.1)),
            PhaseState::ZERO
        );
    }

    #[test]
    fn commutative_force() {
        let d = eom_rhs(&PhaseState::new(1.0, 0.0, 0.0, 0.0), &dc_for(0.0, 0.0));
        assert!(d.q1.abs() < 1e-15 && d.q2.abs() < 1e-15);
        assert!((d.p1 + 1.0).abs() < 1e-15 && d.p2.abs() < 1e-15);
    }

    #[test]
    fn analytic_starts_at_ic() {
        let ic = InitialConditions::new(0.3, -0.4, 1.1, 0.2);
        assert_eq!(propagate_analytic(&ic, &dc_for(0.2, 0.1), 0.0), ic.state());
    }

    #[test]
    fn analytic_commutative_limit() {
        let dc = dc_for(0.0, 0.0);
        let ic = InitialConditions::new(0.7, 0.0, -0.3, 0.0);
        for &t in &[0.1, 1.3, 5.0] {
            let s = propagate_analytic(&ic, &dc, t);
            let expect = 0.7 * f64::cos(t) - 0.3 * f64::sin(t);
            assert!((s.q1 - expect).abs() < 1e-14);
        }
        // no cross-talk from y, π_y
        let cross = InitialConditions::new(0.0, 1.0, 0.0, 1.0);
        for &t in &[0.4, 2.2, 7.7] {
            assert_eq!(propagate_analytic(&cross, &dc, t).q1, 0.0);
        }
    }

    #[test]
    fn finite_difference_of_analytic_matches_rhs() {
        let dc = dc_for(0.3, 0.2);
        let ic = InitialConditions::new(0.5, -0.2, 0.1, 0.9);
        let h = 1e-5;
        for k in 0..20 {
            let t = 0.37 * k as f64;
            let plus = propagate_analytic(&ic, &dc, t + h);
            let minus = propagate_analytic(&ic, &dc, t - h);
            let fd = PhaseState::from_array({
                let (a, b) = (plus.to_array(), minus.to_array());
                [0, 1, 2, 3].map(|i| (a[i] - b[i]) / (2.0 * h))
            });
            let rhs = eom_rhs(&propagate_analytic(&ic, &dc, t), &dc);
            assert!(fd.max_abs_diff(&rhs) < 1e-8, "t={t}");
        }
    }

    #[test]
    fn rk4_closes_periodic_orbit() {
        let dc = dc_for(0.0, 0.0);
        let ic = InitialConditions::new(1.0, 0.5, -0.2, 0.3);
        let traj = integrate_numeric(&ic, &dc, 2.0 * PI, 2.0 * PI / 2000.0).unwrap();
        let (t, last) = *traj.last().unwrap();
        assert!((t - 2.0 * PI).abs() < 1e-12);
        assert!(last.max_abs_diff(&ic.state()) < 1e-10);
        assert_eq!(traj.len(), 2001);
    }

    #[test]
    fn rk4_stride_keeps_final_point() {
        let dc = dc_for(0.1, 0.0);
        let ic = InitialConditions::new(1.0, 0.0, 0.0, 0.0);
        let full = integrate_numeric(&ic, &dc, 1.0, 0.01).unwrap();
        let thin = integrate_numeric_strided(&ic, &dc, 1.0, 0.01, 7).unwrap();
        assert_eq!(thin.points.len(), 100 / 7 + 2);
        assert_eq!(thin.last(), full.last());
        assert_eq!(thin.points[1], full.points[7]);
    }

    #[test]
    fn rk4_rejects_bad_step() {
        let dc = dc_for(0.0, 0.0);
        let ic = InitialConditions::default();
        assert_eq!(
            integrate_numeric(&ic, &dc, 1.0, 0.0),
            Err(Error::InvalidStep)
        );
        assert_eq!(
            integrate_numeric(&ic, &dc, -1.0, 0.1),
            Err(Error::InvalidStep)
        );
    }

    #[test]
    fn rk4_reports_overflow() {
        let mut dc = dc_for(0.0, 0.0);
        dc.alpha = 1e200;
        let ic = InitialConditions::new(1e200, 0.0, 0.0, 0.0);
        assert!(matches!(
            integrate_numeric(&ic, &dc, 1.0, 0.1),
            Err(Error::NonFiniteState { .. })
        ));
    }

    #[test]
    fn invariants_at_origin_and_t0() {
        let dc = dc_for(0.2, 0.3);
        assert_eq!(invariant_pair(&PhaseState::ZERO, &dc), (0.0, 0.0));
        let ic = InitialConditions::new(0.3, 0.4, -0.5, 0.6);
        let (i1, i2) = invariant_pair(&ic.state(), &dc);
        let e1 = dc.alpha_over_beta() * (0.09 + 0.16) + dc.beta_over_alpha() * (0.25 + 0.36);
        assert!((i1 - e1).abs() < 1e-15);
        assert!((i2 - (0.3 * 0.6 - 0.4 * -0.5)).abs() < 1e-15);
    }
}
