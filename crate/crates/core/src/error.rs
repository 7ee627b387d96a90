use core::fmt;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `m`, `ω` or `ħ` not strictly positive, or a parameter is not finite.
    InvalidParams(&'static str),
    /// `θη ≥ ħ²`: the Seiberg–Witten map has no real inverse.
    MapNotInvertible { theta_eta_over_hbar2: f64 },
    /// Gauge ratio `λ/μ` must be strictly positive and finite.
    InvalidGauge(f64),
    /// Target `γ/Ω` outside `[0, 1)`.
    UnreachableRatio(f64),
    /// A square-root argument in a closed form went negative.
    DomainError(&'static str),
    /// The `θη = 0` closed form was called with `θη ≠ 0`.
    DegenerateFormMisuse { theta_eta: f64 },
    /// Integration produced a non-finite component.
    NonFiniteState { step: usize },
    /// Integration step or end time not strictly positive.
    InvalidStep,
    /// Finite-difference step fell below the resolvable scale.
    StepUnderflow,
    /// Point lies too far in the Gaussian tail for a meaningful relative residual.
    GaussianTail { exponent: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(what) => write!(f, "invalid physical parameters: {what}"),
            Error::MapNotInvertible {
                theta_eta_over_hbar2,
            } => write!(
                f,
                "MapNotInvertible: theta*eta/hbar^2 = {theta_eta_over_hbar2} must be < 1"
            ),
            Error::InvalidGauge(r) => write!(f, "InvalidGauge: gauge ratio {r} must be > 0"),
            Error::UnreachableRatio(r) => {
                write!(f, "UnreachableRatio: gamma/Omega = {r} must lie in [0, 1)")
            }
            Error::DomainError(what) => write!(f, "DomainError: {what}"),
            Error::DegenerateFormMisuse { theta_eta } => write!(
                f,
                "DegenerateFormMisuse: degenerate closed form needs theta*eta = 0, got {theta_eta}"
            ),
            Error::NonFiniteState { step } => {
                write!(f, "NonFiniteState: integration diverged at step {step}")
            }
            Error::InvalidStep => write!(f, "time step and end time must be > 0"),
            Error::StepUnderflow => write!(f, "StepUnderflow: finite-difference step too small"),
            Error::GaussianTail { exponent } => {
                write!(f, "point in Gaussian tail (exponent {exponent})")
            }
        }
    }
}

impl core::error::Error for Error {}
