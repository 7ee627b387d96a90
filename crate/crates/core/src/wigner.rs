//! Wigner stargenfunctions of the commutative-frame oscillator.
//!
//! `ρ_{n₁n₂} = ((−1)^{n₁+n₂}/π²ħ²) exp[−((α/β)Q² + (β/α)Π²)/ħ] L_{n₁}(Ω₊/ħ) L_{n₂}(Ω₋/ħ)`
//! with `Ω± = (α/β)Q² + (β/α)Π² ∓ 2(Q₁Π₂ − Q₂Π₁)` solves `H ⋆ ρ = Eρ` for
//! `E = ħ[Ω(n₁ + n₂ + 1) + γ(n₁ − n₂)]`.
//!
//! Because `H` is quadratic the Moyal series stops at second order, so the
//! residual of the stargenvalue equation can be evaluated exactly up to the
//! finite-difference error in the derivatives of `ρ`.

use core::f64::consts::PI;

use crate::algebra::DerivedConstants;
use crate::dynamics::PhaseState;
use crate::error::Error;
use crate::math::{abs, exp, sqrt};
use crate::quadrature::{phase_space_integral, GaussHermite};
use crate::Result;

/// Phase-space argument `(Q₁, Q₂, Π₁, Π₂)` of a Wigner function.
pub type PhasePoint = PhaseState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuantumNumbers {
    pub n1: u32,
    pub n2: u32,
}

impl QuantumNumbers {
    pub const GROUND: QuantumNumbers = QuantumNumbers { n1: 0, n2: 0 };

    pub fn new(n1: u32, n2: u32) -> Self {
        QuantumNumbers { n1, n2 }
    }
}

/// `L⁰_n(x)` by upward recurrence `(k+1)L_{k+1} = (2k+1−x)L_k − kL_{k−1}`.
pub fn laguerre0(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `(α/β)|Q|² + (β/α)|Π|²`.
fn scaled_radius(pt: &PhasePoint, dc: &DerivedConstants) -> f64 {
    dc.alpha_over_beta() * (pt.q1 * pt.q1 + pt.q2 * pt.q2)
        + dc.beta_over_alpha() * (pt.p1 * pt.p1 + pt.p2 * pt.p2)
}

/// `(Ω₊, Ω₋)`.
pub fn omega_pm(pt: &PhasePoint, dc: &DerivedConstants) -> (f64, f64) {
    let r = scaled_radius(pt, dc);
    let l = pt.q1 * pt.p2 - pt.q2 * pt.p1;
    (r - 2.0 * l, r + 2.0 * l)
}

/// Gaussian widths `(sqrt(ħβ/α), sqrt(ħα/β))` along `Q` and `Π`.
pub fn gaussian_widths(dc: &DerivedConstants, hbar: f64) -> (f64, f64) {
    (
        sqrt(hbar * dc.beta_over_alpha()),
        sqrt(hbar * dc.alpha_over_beta()),
    )
}

pub fn wigner_eigenfunction(
    pt: &PhasePoint,
    qn: QuantumNumbers,
    dc: &DerivedConstants,
    hbar: f64,
) -> f64 {
    let sign = if (qn.n1 + qn.n2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let (wp, wm) = omega_pm(pt, dc);
    sign / (PI * PI * hbar * hbar)
        * exp(-scaled_radius(pt, dc) / hbar)
        * laguerre0(qn.n1, wp / hbar)
        * laguerre0(qn.n2, wm / hbar)
}

/// `ħ[Ω(n₁ + n₂ + 1) + γ(n₁ − n₂)]` with `Ω = 2αβ`.
pub fn energy_level(qn: QuantumNumbers, dc: &DerivedConstants, hbar: f64) -> f64 {
    let (n1, n2) = (qn.n1 as f64, qn.n2 as f64);
    hbar * (2.0 * dc.alpha * dc.beta * (n1 + n2 + 1.0) + dc.gamma * (n1 - n2))
}

/// Weyl symbol `α²|Q|² + β²|Π|² + γ(Π₁Q₂ − Π₂Q₁)`.
pub fn hamiltonian_weyl(pt: &PhasePoint, dc: &DerivedConstants) -> f64 {
    let a2 = dc.alpha * dc.alpha;
    let b2 = dc.beta * dc.beta;
    a2 * (pt.q1 * pt.q1 + pt.q2 * pt.q2)
        + b2 * (pt.p1 * pt.p1 + pt.p2 * pt.p2)
        + dc.gamma * (pt.p1 * pt.q2 - pt.p2 * pt.q1)
}

fn hamiltonian_gradient(z: [f64; 4], dc: &DerivedConstants) -> [f64; 4] {
    let two_a2 = 2.0 * dc.alpha * dc.alpha;
    let two_b2 = 2.0 * dc.beta * dc.beta;
    let g = dc.gamma;
    [
        two_a2 * z[0] - g * z[3],
        two_a2 * z[1] + g * z[2],
        two_b2 * z[2] + g * z[1],
        two_b2 * z[3] - g * z[0],
    ]
}

fn hamiltonian_hessian(dc: &DerivedConstants) -> [[f64; 4]; 4] {
    let two_a2 = 2.0 * dc.alpha * dc.alpha;
    let two_b2 = 2.0 * dc.beta * dc.beta;
    let g = dc.gamma;
    [
        [two_a2, 0.0, 0.0, -g],
        [0.0, two_a2, g, 0.0],
        [0.0, g, two_b2, 0.0],
        [-g, 0.0, 0.0, two_b2],
    ]
}

/// Finite-difference controls for [`stargen_residual_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarOptions {
    /// Base step as a fraction of the Gaussian width along each axis.
    pub step_factor: f64,
    /// Largest admissible `((α/β)Q² + (β/α)Π²)/ħ`.
    pub max_exponent: f64,
}

impl Default for StarOptions {
    fn default() -> Self {
        StarOptions {
            step_factor: 1e-3,
            max_exponent: 40.0,
        }
    }
}

/// `(H ⋆ ρ − Eρ)` at a point, with the pieces needed to judge it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StarResidual {
    pub re: f64,
    pub im: f64,
    pub energy: f64,
    pub rho: f64,
}

impl StarResidual {
    /// `|residual| / (E·|ρ|)`.
    pub fn rel(&self) -> f64 {
        sqrt(self.re * self.re + self.im * self.im) / (abs(self.energy) * abs(self.rho))
    }

    pub fn rel_im(&self) -> f64 {
        abs(self.im) / (abs(self.energy) * abs(self.rho))
    }
}

pub fn stargen_residual(
    pt: &PhasePoint,
    qn: QuantumNumbers,
    dc: &DerivedConstants,
    hbar: f64,
) -> Result<StarResidual> {
    stargen_residual_with(pt, qn, dc, hbar, &StarOptions::default())
}

/// Gradient and Hessian of `f` by central differences, Richardson
/// extrapolated from steps `h` and `h/2`.
fn richardson_derivatives<F>(f: F, z: [f64; 4], h: [f64; 4]) -> ([f64; 4], [[f64; 4]; 4])
where
    F: Fn([f64; 4]) -> f64,
{
    let shifted = |di: usize, si: f64, dj: usize, sj: f64, scale: f64| {
        let mut y = z;
        y[di] += si * h[di] * scale;
        y[dj] += sj * h[dj] * scale;
        f(y)
    };
    let f0 = f(z);
    let mut grad = [0.0; 4];
    let mut hess = [[0.0; 4]; 4];
    for i in 0..4 {
        let at = |scale: f64| {
            let mut y = z;
            y[i] = z[i] + h[i] * scale;
            let plus = f(y);
            y[i] = z[i] - h[i] * scale;
            let minus = f(y);
            let hs = h[i] * scale;
            (
                (plus - minus) / (2.0 * hs),
                (plus - 2.0 * f0 + minus) / (hs * hs),
            )
        };
        let (d1, s1) = at(1.0);
        let (d2, s2) = at(0.5);
        grad[i] = (4.0 * d2 - d1) / 3.0;
        hess[i][i] = (4.0 * s2 - s1) / 3.0;
        for j in 0..i {
            let mixed = |scale: f64| {
                (shifted(i, 1.0, j, 1.0, scale)
                    - shifted(i, 1.0, j, -1.0, scale)
                    - shifted(i, -1.0, j, 1.0, scale)
                    + shifted(i, -1.0, j, -1.0, scale))
                    / (4.0 * h[i] * h[j] * scale * scale)
            };
            let v = (4.0 * mixed(0.5) - mixed(1.0)) / 3.0;
            hess[i][j] = v;
            hess[j][i] = v;
        }
    }
    (grad, hess)
}

/// Residual of `H ⋆ ρ = Eρ` using the terminating Moyal expansion
/// `H⋆ρ = Hρ + (iħ/2){H, ρ} + ½(iħ/2)²[H_QQ:ρ_ΠΠ − 2H_QΠ:ρ_ΠQ + H_ΠΠ:ρ_QQ]`.
pub fn stargen_residual_with(
    pt: &PhasePoint,
    qn: QuantumNumbers,
    dc: &DerivedConstants,
    hbar: f64,
    opts: &StarOptions,
) -> Result<StarResidual> {
    let exponent = scaled_radius(pt, dc) / hbar;
    if !(exponent < opts.max_exponent) {
        return Err(Error::GaussianTail { exponent });
    }
    let (wq, wp) = gaussian_widths(dc, hbar);
    if !(opts.step_factor >= 1e-10) || !(wq > 0.0) || !(wp > 0.0) {
        return Err(Error::StepUnderflow);
    }
    let h = [
        opts.step_factor * wq,
        opts.step_factor * wq,
        opts.step_factor * wp,
        opts.step_factor * wp,
    ];
    let z = pt.to_array();
    let rho_at = |y: [f64; 4]| wigner_eigenfunction(&PhaseState::from_array(y), qn, dc, hbar);
    let rho = rho_at(z);
    let (dr, d2r) = richardson_derivatives(rho_at, z, h);
    let dh = hamiltonian_gradient(z, dc);
    let d2h = hamiltonian_hessian(dc);

    let mut poisson = 0.0;
    let mut second = 0.0;
    for a in 0..2 {
        poisson += dh[a] * dr[a + 2] - dh[a + 2] * dr[a];
        for b in 0..2 {
            second += d2h[a][b] * d2r[a + 2][b + 2] - 2.0 * d2h[a][b + 2] * d2r[a + 2][b]
                + d2h[a + 2][b + 2] * d2r[a][b];
        }
    }
    let energy = energy_level(qn, dc, hbar);
    // ½(iħ/2)² = −ħ²/8
    let re = hamiltonian_weyl(pt, dc) * rho - hbar * hbar / 8.0 * second - energy * rho;
    let im = 0.5 * hbar * poisson;
    Ok(StarResidual {
        re,
        im,
        energy,
        rho,
    })
}

/// `∫ ρ_{n₁n₂} d⁴z` by a tensor-product Gauss–Hermite rule with `nodes` per axis.
pub fn wigner_normalization(
    qn: QuantumNumbers,
    dc: &DerivedConstants,
    hbar: f64,
    nodes: usize,
) -> f64 {
    let (wq, wp) = gaussian_widths(dc, hbar);
    let rule = GaussHermite::new(nodes);
    phase_space_integral(&rule, [wq, wq, wp, wp], |z| {
        wigner_eigenfunction(&PhaseState::from_array(z), qn, dc, hbar)
    })
}

/// `∫ ρ_a ρ_b d⁴z`; equals `δ_ab/(2πħ)²` for orthonormal states.
pub fn wigner_overlap(
    a: QuantumNumbers,
    b: QuantumNumbers,
    dc: &DerivedConstants,
    hbar: f64,
    nodes: usize,
) -> f64 {
    let (wq, wp) = gaussian_widths(dc, hbar);
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let rule = GaussHermite::new(nodes);
    phase_space_integral(&rule, [wq * s, wq * s, wp * s, wp * s], |z| {
        let pt = PhaseState::from_array(z);
        wigner_eigenfunction(&pt, a, dc, hbar) * wigner_eigenfunction(&pt, b, dc, hbar)
    })
}
