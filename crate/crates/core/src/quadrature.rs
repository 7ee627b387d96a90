//! Gauss–Hermite quadrature for Gaussian-weighted phase-space integrals.

use alloc::vec::Vec;

use crate::math::{abs, exp, sqrt};

/// Nodes and weights of the `n`-point rule for `∫ f(x) e^{−x²} dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    /// Builds the rule by Newton iteration on orthonormal Hermite functions.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Hermite rule needs at least one node");
        const PIM4: f64 = 0.751_125_544_464_942_5; // π^{-1/4}
        const EPS: f64 = 3e-15;
        let mut x = alloc::vec![0.0; n];
        let mut w = alloc::vec![0.0; n];
        let nf = n as f64;
        let mut z = 0.0;
        for i in 0..n.div_ceil(2) {
            z = match i {
                0 => sqrt(2.0 * nf + 1.0) - 1.85575 * libm::pow(2.0 * nf + 1.0, -1.0 / 6.0),
                1 => z - 1.14 * libm::pow(nf, 0.426) / z,
                2 => 1.86 * z - 0.86 * x[0],
                3 => 1.91 * z - 0.91 * x[1],
                _ => 2.0 * z - x[i - 2],
            };
            let mut pp = 0.0;
            for _ in 0..100 {
                let mut p1 = PIM4;
                let mut p2 = 0.0;
                for j in 1..=n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = z * sqrt(2.0 / jf) * p2 - sqrt((jf - 1.0) / jf) * p3;
                }
                pp = sqrt(2.0 * nf) * p2;
                let z1 = z;
                z = z1 - p1 / pp;
                if abs(z - z1) <= EPS * abs(z).max(1.0) {
                    break;
                }
            }
            x[i] = z;
            x[n - 1 - i] = -z;
            w[i] = 2.0 / (pp * pp);
            w[n - 1 - i] = w[i];
        }
        GaussHermite {
            nodes: x,
            weights: w,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫ f(x) e^{−x²} dx`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `∫_{R⁴} f(z) d⁴z` for an integrand decaying like
/// `exp(−Σ (z_k/width_k)²)` times a polynomial.
///
/// Each axis is rescaled by its width and the Gaussian factor is divided
/// back out before the tensor-product rule is applied.
pub fn phase_space_integral<F>(rule: &GaussHermite, widths: [f64; 4], mut f: F) -> f64
where
    F: FnMut([f64; 4]) -> f64,
{
    let n = rule.len();
    let w: Vec<f64> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &wt)| wt * exp(x * x))
        .collect();
    let x = &rule.nodes;
    let jac = widths.iter().product::<f64>();
    let mut total = 0.0;
    for a in 0..n {
        for b in 0..n {
            let wab = w[a] * w[b];
            for c in 0..n {
                let wabc = wab * w[c];
                let mut inner = 0.0;
                for d in 0..n {
                    let z = [
                        widths[0] * x[a],
                        widths[1] * x[b],
                        widths[2] * x[c],
                        widths[3] * x[d],
                    ];
                    inner += w[d] * f(z);
                }
                total += wabc * inner;
            }
        }
    }
    jac * total
}
