//! Phase-space noncommutative 2-D quantum harmonic oscillator.
//!
//! Positions and momenta obey `[q_i, q_j] = iθε_ij`, `[q_i, p_j] = iħδ_ij`,
//! `[p_i, p_j] = iηε_ij`. A linear Seiberg–Witten map takes the problem to an
//! ordinary Heisenberg–Weyl frame `(Q, Π)` where the oscillator becomes
//! `H = α²Q² + β²Π² + γ Σ ε_ij Π_i Q_j`. This crate provides:
//!
//! * [`algebra`]: the gauge constraint, forward/inverse maps, derived constants
//!   and an algebra-preservation residual;
//! * [`dynamics`]: equations of motion, closed-form propagation, a fixed-step
//!   RK4 oracle and the two conserved quantities;
//! * [`observables`]: commutative-frame mode energies and noncommutative-frame
//!   sector energies, with their closed forms;
//! * [`wigner`]: stargenfunctions, the energy spectrum and a Moyal
//!   star-product residual;
//! * [`quadrature`]: Gauss–Hermite rules used for phase-space integrals.
//!
//! The crate is `no_std` and only needs `alloc` for trajectories and series.
//! The convention `ε₁₂ = +1` is used throughout.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod algebra;
pub mod dynamics;
mod error;
mod math;
pub mod observables;
pub mod quadrature;
pub mod ratio;
pub mod wigner;

pub use algebra::{
    algebra_residual, derived_constants, make_gauge, solve_gauge_product, sw_to_commutative,
    sw_to_nc, DerivedConstants, GaugeChoice, GaugeProduct, NcState, PhysicalParams,
};
pub use dynamics::{
    eom_rhs, integrate_numeric, integrate_numeric_strided, invariant_pair, propagate_analytic,
    InitialConditions, PhaseState, Trajectory,
};
pub use error::Error;
pub use observables::Sector;
pub use ratio::{params_from_ratio, RatioMode, RatioSpec};

pub type Result<T> = core::result::Result<T, Error>;
