mod common;

use std::f64::consts::PI;

use common::{random_params, rng, setup};
use nclab::observables::{
    coupling_asymmetry, ground_mode_ic, mode_energy, mode_energy_closed, xi_closed,
    xi_closed_degenerate, xi_closed_signed, xi_dot_first_order, xi_first_order, xi_trajectory,
};
use nclab::{params_from_ratio, propagate_analytic, PhysicalParams, RatioMode, RatioSpec, Sector};
use rand::Rng;

#[test]
fn beating_law_along_analytic_trajectory() {
    for (theta, eta) in [(0.004, 0.0), (0.1, 0.3), (-0.2, 0.4)] {
        let p = PhysicalParams::new(1.2, 0.9, 0.8, theta, eta).unwrap();
        let (_, dc) = setup(&p, 1.4);
        let ic = ground_mode_ic(&dc, p.hbar);
        let unit = p.hbar * dc.omega_big;
        let beat = PI / dc.gamma.abs();
        for k in 0..2000 {
            let t = beat * k as f64 / 1999.0;
            let s = propagate_analytic(&ic, &dc, t);
            for sec in Sector::BOTH {
                let e = mode_energy(&s, &dc, sec);
                assert!((e - mode_energy_closed(&dc, p.hbar, t, sec)).abs() < 1e-10 * unit);
            }
        }
    }
}

#[test]
fn closed_form_partition_is_exact() {
    let mut r = rng(21);
    for _ in 0..20 {
        let p = random_params(&mut r, 0.6);
        let (_, dc) = setup(&p, 1.0);
        let unit = p.hbar * dc.omega_big;
        for k in 0..200 {
            let t = 0.37 * k as f64;
            let s = xi_closed(&dc, &p, t, Sector::One).unwrap()
                + xi_closed(&dc, &p, t, Sector::Two).unwrap();
            assert!((s - unit).abs() < 1e-12 * unit);
        }
    }
}

#[test]
fn trajectory_composition_is_gauge_invariant() {
    let mut r = rng(22);
    for _ in 0..10 {
        let p = random_params(&mut r, 0.6);
        let runs: Vec<Vec<f64>> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&ratio| {
                let (g, dc) = setup(&p, ratio);
                let ic = ground_mode_ic(&dc, p.hbar);
                (0..100)
                    .map(|k| xi_trajectory(&ic, &dc, &p, &g, 0.53 * k as f64, Sector::One))
                    .collect()
            })
            .collect();
        for run in &runs[1..] {
            for (a, b) in run.iter().zip(&runs[0]) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn closed_form_matches_trajectory_when_eta_dominates() {
    let mut r = rng(23);
    let mut checked = 0;
    while checked < 10 {
        let p = random_params(&mut r, 0.6);
        let (g, dc) = setup(&p, r.gen_range(0.5..2.0));
        if coupling_asymmetry(&p, &dc) < 0.0 {
            continue;
        }
        checked += 1;
        let ic = ground_mode_ic(&dc, p.hbar);
        let unit = p.hbar * dc.omega_big;
        for k in 0..200 {
            let t = 0.41 * k as f64;
            for s in Sector::BOTH {
                let a = xi_trajectory(&ic, &dc, &p, &g, t, s);
                let b = xi_closed(&dc, &p, t, s).unwrap();
                assert!((a - b).abs() < 1e-9 * unit, "{p:?} t={t}");
            }
        }
    }
}

#[test]
fn signed_closed_form_matches_trajectory_always() {
    let mut r = rng(24);
    for _ in 0..20 {
        let p = random_params(&mut r, 0.6);
        let (g, dc) = setup(&p, r.gen_range(0.5..2.0));
        let ic = ground_mode_ic(&dc, p.hbar);
        let unit = p.hbar * dc.omega_big;
        for k in 0..200 {
            let t = 0.41 * k as f64;
            for s in Sector::BOTH {
                let a = xi_trajectory(&ic, &dc, &p, &g, t, s);
                let b = xi_closed_signed(&dc, &p, t, s).unwrap();
                assert!((a - b).abs() < 1e-9 * unit);
            }
        }
    }
}

#[test]
fn beating_envelope_at_two_permille() {
    let eps = 1e-6;
    let p = params_from_ratio(
        &RatioSpec {
            ratio: 0.002,
            mode: RatioMode::SingleTheta,
        },
        1.0,
        1.0,
        1.0,
    )
    .unwrap();
    let (_, dc) = setup(&p, 1.0);
    let unit = dc.omega_big;
    let n = 20_000;
    let t_beat = PI / dc.gamma;
    let (mut max1, mut min1) = (f64::MIN, f64::MAX);
    for k in 0..=n {
        let t = t_beat * k as f64 / n as f64;
        let x1 = xi_closed(&dc, &p, t, Sector::One).unwrap() / unit;
        max1 = max1.max(x1);
        min1 = min1.min(x1);
    }
    let r = dc.ratio();
    assert!(max1 >= 1.0 - 2.0 * r - eps && max1 <= 1.0 + eps, "{max1}");
    assert!(min1 >= -eps, "{min1}");
}

#[test]
fn first_order_derivative_matches_finite_difference() {
    let p = params_from_ratio(
        &RatioSpec {
            ratio: 0.002,
            mode: RatioMode::SingleTheta,
        },
        1.0,
        1.0,
        1.0,
    )
    .unwrap();
    let (_, dc) = setup(&p, 1.0);
    let h = 1e-5 / dc.omega_big;
    let amp = p.hbar * dc.gamma * dc.omega_big;
    for k in 0..500 {
        let t = 0.071 * k as f64;
        for s in Sector::BOTH {
            let fd = (xi_first_order(&dc, t + h, s, 1.0) - xi_first_order(&dc, t - h, s, 1.0))
                / (2.0 * h);
            let an = xi_dot_first_order(&dc, t, s, 1.0);
            assert!((fd - an).abs() < 1e-6 * amp, "{fd} {an}");
        }
    }
}

#[test]
fn degenerate_form_requires_vanishing_product() {
    let p = PhysicalParams::new(1.0, 1.0, 1.0, 0.3, 0.2).unwrap();
    let (_, dc) = setup(&p, 1.0);
    assert!(xi_closed_degenerate(&dc, &p, 1.0, Sector::One).is_err());
}

/// Absolute sup-norm error of the first-order form on `Ωt ∈ [0, 10]`.
fn first_order_error(ratio: f64) -> f64 {
    let p = params_from_ratio(
        &RatioSpec {
            ratio,
            mode: RatioMode::SingleTheta,
        },
        1.0,
        1.0,
        1.0,
    )
    .unwrap();
    let (_, dc) = setup(&p, 1.0);
    (0..=10_000)
        .map(|k| {
            let t = 10.0 * k as f64 / 10_000.0 / dc.omega_big;
            (xi_first_order(&dc, t, Sector::One, 1.0)
                - xi_closed_degenerate(&dc, &p, t, Sector::One).unwrap())
            .abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn first_order_truncation_is_cubic_in_gamma() {
    // the exact bracket is odd in γ, so dropping everything past first order
    // leaves an O(γ³) remainder
    let ratio = first_order_error(0.004) / first_order_error(0.002);
    assert!((7.5..8.5).contains(&ratio), "{ratio}");
}
