mod common;

use nclab::algebra::omega_from_params;
use nclab::{
    algebra_residual, derived_constants, make_gauge, solve_gauge_product, sw_to_commutative,
    sw_to_nc, PhaseState, PhysicalParams,
};
use proptest::prelude::*;

fn params_strategy() -> impl Strategy<Value = PhysicalParams> {
    (
        0.3..3.0f64,
        0.3..3.0f64,
        0.3..2.0f64,
        -1.5..1.5f64,
        -1.5..1.5f64,
    )
        .prop_filter_map(
            "theta*eta/hbar^2 must lie in (-1, 1)",
            |(m, omega, hbar, theta, eta)| {
                let p = PhysicalParams::new(m, omega, hbar, theta, eta).ok()?;
                let k = p.theta_eta_over_hbar2();
                (k > -0.999 && k < 0.999).then_some(p)
            },
        )
}

fn state_strategy() -> impl Strategy<Value = PhaseState> {
    prop::array::uniform4(-5.0..5.0f64).prop_map(PhaseState::from_array)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sw_maps_are_mutual_inverses(p in params_strategy(), ratio in 0.2..5.0f64, s in state_strategy()) {
        let g = make_gauge(&p, ratio).unwrap();
        let back = sw_to_commutative(&sw_to_nc(&s, &p, &g), &p, &g).unwrap();
        let scale = s.max_abs().max(1.0) / (1.0 - p.theta_eta_over_hbar2()).sqrt();
        prop_assert!(back.max_abs_diff(&s) < 1e-13 * scale, "{:?} vs {:?}", back, s);
    }

    #[test]
    fn algebra_is_preserved(p in params_strategy(), ratio in prop::sample::select(vec![0.5, 1.0, 2.0])) {
        let g = make_gauge(&p, ratio).unwrap();
        prop_assert!(algebra_residual(&p, &g) < 1e-12);
    }

    #[test]
    fn omega_is_gauge_invariant(p in params_strategy()) {
        let omegas: Vec<f64> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&r| derived_constants(&p, &make_gauge(&p, r).unwrap()).omega_big)
            .collect();
        for w in &omegas {
            prop_assert!((w - omegas[1]).abs() < 1e-12 * omegas[1]);
        }
        prop_assert!((omegas[1] - omega_from_params(&p)).abs() < 1e-12 * omegas[1]);
    }

    #[test]
    fn derived_constant_identities(p in params_strategy(), ratio in 0.2..5.0f64) {
        let dc = derived_constants(&p, &make_gauge(&p, ratio).unwrap());
        prop_assert!(dc.identity_residuals(&p).max() < 1e-12);
    }

    #[test]
    fn branch_consistency(p in params_strategy()) {
        let lm = solve_gauge_product(&p).unwrap();
        let (v, c) = (lm.value(), lm.complement());
        let total = (2.0 * v - 1.0).powi(2) + 4.0 * v * c;
        prop_assert!((total - 1.0).abs() < 1e-14);
        prop_assert!(((v + c) - 1.0).abs() < 1e-15);
    }
}
