#![allow(dead_code)]

use nclab::{derived_constants, make_gauge, DerivedConstants, GaugeChoice, PhysicalParams};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random valid parameters with `|θ|, |η| ≤ nc_scale` and `θη/ħ² < 0.95`.
pub fn random_params(rng: &mut ChaCha8Rng, nc_scale: f64) -> PhysicalParams {
    loop {
        let m = rng.gen_range(0.5..2.0);
        let omega = rng.gen_range(0.5..2.0);
        let hbar = rng.gen_range(0.5..1.5);
        let theta = rng.gen_range(-nc_scale..nc_scale);
        let eta = rng.gen_range(-nc_scale..nc_scale);
        if let Ok(p) = PhysicalParams::new(m, omega, hbar, theta, eta) {
            if p.theta_eta_over_hbar2() < 0.95 {
                return p;
            }
        }
    }
}

pub fn setup(p: &PhysicalParams, ratio: f64) -> (GaugeChoice, DerivedConstants) {
    let g = make_gauge(p, ratio).unwrap();
    (g, derived_constants(p, &g))
}
