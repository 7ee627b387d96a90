//! Choosing `(θ, η)` that realise a target `γ/Ω`.

use crate::algebra::PhysicalParams;
use crate::error::Error;
use crate::math::sqrt;
use crate::Result;

/// How the target ratio is split between `θ` and `η`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RatioMode {
    /// `η = 0`, all deformation in positions.
    SingleTheta,
    /// `θ = 0`, all deformation in momenta.
    SingleEta,
    /// `θ = η`.
    Symmetric,
}

impl RatioMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RatioMode::SingleTheta => "single_theta",
            RatioMode::SingleEta => "single_eta",
            RatioMode::Symmetric => "symmetric",
        }
    }

    pub fn parse(s: &str) -> Option<RatioMode> {
        match s {
            "single_theta" => Some(RatioMode::SingleTheta),
            "single_eta" => Some(RatioMode::SingleEta),
            "symmetric" => Some(RatioMode::Symmetric),
            _ => None,
        }
    }
}

/// Target `γ/Ω ∈ [0, 1)` and how to reach it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RatioSpec {
    pub ratio: f64,
    pub mode: RatioMode,
}

/// Inverts `γ(θ, η)` and `Ω(θ, η)` for a target `γ/Ω`.
///
/// For the single-parameter modes `θη = 0`, so `Ω² = ω² + γ²` and
/// `γ = rω/sqrt(1 − r²)`. For the symmetric mode, with
/// `c = (mω² + 1/m)/2ħ`, `θ = η = rω / sqrt(c²(1 − r²) + r²ω²/ħ²)`.
pub fn params_from_ratio(
    spec: &RatioSpec,
    m: f64,
    omega: f64,
    hbar: f64,
) -> Result<PhysicalParams> {
    let r = spec.ratio;
    if !(0.0..1.0).contains(&r) {
        return Err(Error::UnreachableRatio(r));
    }
    // validate the scales before dividing by them
    PhysicalParams::commutative(m, omega, hbar)?;
    let (theta, eta) = match spec.mode {
        RatioMode::SingleTheta => {
            let gamma = r * omega / sqrt(1.0 - r * r);
            (2.0 * hbar * gamma / (m * omega * omega), 0.0)
        }
        RatioMode::SingleEta => {
            let gamma = r * omega / sqrt(1.0 - r * r);
            (0.0, 2.0 * m * hbar * gamma)
        }
        RatioMode::Symmetric => {
            let c = (m * omega * omega + 1.0 / m) / (2.0 * hbar);
            let v = r * omega / sqrt(c * c * (1.0 - r * r) + r * r * omega * omega / (hbar * hbar));
            (v, v)
        }
    };
    PhysicalParams::new(m, omega, hbar, theta, eta)
}
