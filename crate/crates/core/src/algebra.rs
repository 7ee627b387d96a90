//! Deformed Heisenberg–Weyl algebra in two dimensions and its
//! Seiberg–Witten map to the ordinary commutative frame.

use crate::dynamics::PhaseState;
use crate::error::Error;
use crate::math::{abs, sqrt};
use crate::Result;

/// The five physical inputs of the noncommutative oscillator.
///
/// `theta` and `eta` may take either sign; the only joint constraint is
/// `θη < ħ²`. With `θη < 0` the two contributions to `γ` can cancel.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhysicalParams {
    pub m: f64,
    pub omega: f64,
    pub hbar: f64,
    pub theta: f64,
    pub eta: f64,
}

impl PhysicalParams {
    pub fn new(m: f64, omega: f64, hbar: f64, theta: f64, eta: f64) -> Result<Self> {
        let p = PhysicalParams {
            m,
            omega,
            hbar,
            theta,
            eta,
        };
        p.validate()?;
        Ok(p)
    }

    /// Commutative oscillator, `θ = η = 0`.
    pub fn commutative(m: f64, omega: f64, hbar: f64) -> Result<Self> {
        Self::new(m, omega, hbar, 0.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.m, self.omega, self.hbar, self.theta, self.eta];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("all parameters must be finite"));
        }
        if self.m <= 0.0 {
            return Err(Error::InvalidParams("m must be > 0"));
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParams("omega must be > 0"));
        }
        if self.hbar <= 0.0 {
            return Err(Error::InvalidParams("hbar must be > 0"));
        }
        let k = self.theta_eta_over_hbar2();
        if k >= 1.0 {
            return Err(Error::MapNotInvertible {
                theta_eta_over_hbar2: k,
            });
        }
        Ok(())
    }

    /// `θη/ħ²`, the dimensionless deformation strength.
    pub fn theta_eta_over_hbar2(&self) -> f64 {
        self.theta * self.eta / (self.hbar * self.hbar)
    }

    /// The two pieces of `γ`: `(mω²θ/2ħ, η/2mħ)`.
    pub fn gamma_parts(&self) -> (f64, f64) {
        let from_theta = self.m * self.omega * self.omega * self.theta / (2.0 * self.hbar);
        let from_eta = self.eta / (2.0 * self.m * self.hbar);
        (from_theta, from_eta)
    }

    /// Rotation frequency of the commutative-frame Hamiltonian.
    pub fn gamma(&self) -> f64 {
        let (a, b) = self.gamma_parts();
        a + b
    }
}

/// The gauge product `λμ` together with its complement `1 − λμ`.
///
/// The complement is carried separately because for small `θη/ħ²` it is a
/// tiny number that cannot be recovered from `λμ ≈ 1` by subtraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeProduct {
    value: f64,
    complement: f64,
}

impl GaugeProduct {
    /// `λμ`.
    pub fn value(&self) -> f64 {
        self.value
    }

    /// `1 − λμ`, computed without cancellation.
    pub fn complement(&self) -> f64 {
        self.complement
    }

    /// `2λμ − 1 = sqrt(1 − θη/ħ²)`.
    pub fn root(&self) -> f64 {
        self.value - self.complement
    }
}

/// Solves `θη/(4ħ²) = λμ(1 − λμ)` on the branch continuous with the
/// identity map: `λμ = (1 + sqrt(1 − θη/ħ²))/2`.
pub fn solve_gauge_product(params: &PhysicalParams) -> Result<GaugeProduct> {
    let k = params.theta_eta_over_hbar2();
    if !(k < 1.0) {
        return Err(Error::MapNotInvertible {
            theta_eta_over_hbar2: k,
        });
    }
    let s = sqrt(1.0 - k);
    Ok(GaugeProduct {
        value: 0.5 * (1.0 + s),
        complement: 0.5 * k / (1.0 + s),
    })
}

/// The individual Seiberg–Witten scales. Only `λμ` is fixed by the
/// constraint; the ratio `λ/μ` is a gauge freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GaugeChoice {
    pub lambda: f64,
    pub mu: f64,
}

impl GaugeChoice {
    pub fn product(&self) -> f64 {
        self.lambda * self.mu
    }

    pub fn ratio(&self) -> f64 {
        self.lambda / self.mu
    }
}

/// Builds `λ = sqrt(λμ·r)`, `μ = sqrt(λμ/r)` for gauge ratio `r = λ/μ`.
pub fn make_gauge(params: &PhysicalParams, ratio: f64) -> Result<GaugeChoice> {
    if !(ratio > 0.0) || !ratio.is_finite() {
        return Err(Error::InvalidGauge(ratio));
    }
    let lm = solve_gauge_product(params)?.value();
    Ok(GaugeChoice {
        lambda: sqrt(lm * ratio),
        mu: sqrt(lm / ratio),
    })
}

/// Coefficients of the commutative-frame Hamiltonian and its frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DerivedConstants {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub omega_big: f64,
    pub product_lm: f64,
}

impl DerivedConstants {
    pub fn alpha_over_beta(&self) -> f64 {
        self.alpha / self.beta
    }

    pub fn beta_over_alpha(&self) -> f64 {
        self.beta / self.alpha
    }

    /// `γ/Ω`.
    pub fn ratio(&self) -> f64 {
        self.gamma / self.omega_big
    }

    /// Relative deviations of the three [`DerivedConstants`] identities.
    pub fn identity_residuals(&self, params: &PhysicalParams) -> OmegaResiduals {
        let k = params.theta_eta_over_hbar2();
        let w2 = params.omega * params.omega;
        let g2 = self.gamma * self.gamma;
        let big2 = self.omega_big * self.omega_big;
        let root = 2.0 * self.product_lm - 1.0;
        let via_product = root * root * w2 + g2;
        let via_params = w2 * (1.0 - k) + g2;
        let two_ab = 2.0 * self.alpha * self.beta;
        OmegaResiduals {
            two_alpha_beta: rel(self.omega_big, two_ab),
            product_form: rel(big2, via_product),
            param_form: rel(big2, via_params),
            branch: rel(root * root, 1.0 - k),
        }
    }
}

/// Relative residuals returned by [`DerivedConstants::identity_residuals`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaResiduals {
    /// `Ω` vs `2αβ`.
    pub two_alpha_beta: f64,
    /// `Ω²` vs `(2λμ − 1)²ω² + γ²`.
    pub product_form: f64,
    /// `Ω²` vs `ω²(1 − θη/ħ²) + γ²`.
    pub param_form: f64,
    /// `(2λμ − 1)²` vs `1 − θη/ħ²`.
    pub branch: f64,
}

impl OmegaResiduals {
    pub fn max(&self) -> f64 {
        self.two_alpha_beta
            .max(self.product_form)
            .max(self.param_form)
            .max(self.branch)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = abs(a).max(abs(b));
    if scale == 0.0 {
        0.0
    } else {
        abs(a - b) / scale
    }
}

/// `Ω` straight from the physical parameters, `sqrt(ω²(1 − θη/ħ²) + γ²)`.
///
/// For `ω = 1` this coincides with `sqrt(ω² + γ² − θη/ħ²)`.
pub fn omega_from_params(params: &PhysicalParams) -> f64 {
    let g = params.gamma();
    sqrt(params.omega * params.omega * (1.0 - params.theta_eta_over_hbar2()) + g * g)
}

pub fn derived_constants(params: &PhysicalParams, gauge: &GaugeChoice) -> DerivedConstants {
    let PhysicalParams {
        m,
        omega,
        hbar,
        theta,
        eta,
    } = *params;
    let (lambda, mu) = (gauge.lambda, gauge.mu);
    let w2 = omega * omega;
    let alpha2 = m * w2 * lambda * lambda / 2.0 + eta * eta / (8.0 * m * hbar * hbar * mu * mu);
    let beta2 =
        mu * mu / (2.0 * m) + m * w2 * theta * theta / (8.0 * hbar * hbar * lambda * lambda);
    let alpha = sqrt(alpha2);
    let beta = sqrt(beta2);
    DerivedConstants {
        alpha,
        beta,
        gamma: params.gamma(),
        omega_big: 2.0 * alpha * beta,
        product_lm: lambda * mu,
    }
}

/// Noncommutative-frame phase-space point `(q₁, q₂, p₁, p₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NcState {
    pub q1: f64,
    pub q2: f64,
    pub p1: f64,
    pub p2: f64,
}

impl NcState {
    pub fn new(q1: f64, q2: f64, p1: f64, p2: f64) -> Self {
        NcState { q1, q2, p1, p2 }
    }

    pub fn is_finite(&self) -> bool {
        self.q1.is_finite() && self.q2.is_finite() && self.p1.is_finite() && self.p2.is_finite()
    }
}

/// Matrix of the forward map, rows `(q₁, q₂, p₁, p₂)`, columns `(Q₁, Q₂, Π₁, Π₂)`.
pub fn sw_matrix(params: &PhysicalParams, gauge: &GaugeChoice) -> [[f64; 4]; 4] {
    let (lambda, mu, hbar) = (gauge.lambda, gauge.mu, params.hbar);
    let a = params.theta / (2.0 * lambda * hbar);
    let b = params.eta / (2.0 * mu * hbar);
    [
        [lambda, 0.0, 0.0, -a],
        [0.0, lambda, a, 0.0],
        [0.0, b, mu, 0.0],
        [-b, 0.0, 0.0, mu],
    ]
}

/// Forward map `q_i = λQ_i − (θ/2λħ)ε_ij Π_j`, `p_i = μΠ_i + (η/2μħ)ε_ij Q_j`.
pub fn sw_to_nc(state: &PhaseState, params: &PhysicalParams, gauge: &GaugeChoice) -> NcState {
    let m = sw_matrix(params, gauge);
    let z = [state.q1, state.q2, state.p1, state.p2];
    let row = |r: &[f64; 4]| r[0] * z[0] + r[1] * z[1] + r[2] * z[2] + r[3] * z[3];
    NcState {
        q1: row(&m[0]),
        q2: row(&m[1]),
        p1: row(&m[2]),
        p2: row(&m[3]),
    }
}

/// Inverse map back to the commutative frame.
pub fn sw_to_commutative(
    nc: &NcState,
    params: &PhysicalParams,
    gauge: &GaugeChoice,
) -> Result<PhaseState> {
    let k = params.theta_eta_over_hbar2();
    if !(k < 1.0) {
        return Err(Error::MapNotInvertible {
            theta_eta_over_hbar2: k,
        });
    }
    let (lambda, mu, hbar) = (gauge.lambda, gauge.mu, params.hbar);
    let inv_s = 1.0 / sqrt(1.0 - k);
    let c = params.theta / (2.0 * lambda * mu * hbar);
    let d = params.eta / (2.0 * lambda * mu * hbar);
    Ok(PhaseState {
        q1: mu * inv_s * (nc.q1 + c * nc.p2),
        q2: mu * inv_s * (nc.q2 - c * nc.p1),
        p1: lambda * inv_s * (nc.p1 - d * nc.q2),
        p2: lambda * inv_s * (nc.p2 + d * nc.q1),
    })
}

/// Max absolute deviation of the mapped brackets from the deformed algebra.
///
/// The bracket matrix of the image variables is `M J Mᵀ`, where `J` is the
/// canonical form `[Q_i, Π_j] = iħδ_ij`. It is compared entrywise with
/// `iθε`, `iħδ` and `iηε`.
pub fn algebra_residual(params: &PhysicalParams, gauge: &GaugeChoice) -> f64 {
    let m = sw_matrix(params, gauge);
    let h = params.hbar;
    let (t, e) = (params.theta, params.eta);
    let target = [
        [0.0, t, h, 0.0],
        [-t, 0.0, 0.0, h],
        [-h, 0.0, 0.0, e],
        [0.0, -h, -e, 0.0],
    ];
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            // J = ħ [[0, I], [−I, 0]]
            let mut b = 0.0;
            for k in 0..2 {
                b += h * (m[i][k] * m[j][k + 2] - m[i][k + 2] * m[j][k]);
            }
            worst = worst.max(abs(b - target[i][j]));
        }
    }
    worst
}
