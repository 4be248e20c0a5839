//! One-dimensional Gauss–Hermite rules and deterministic summation.

use crate::error::{Error, Result};
use crate::C64;

/// Gauss–Hermite rule for `∫ f(u) e^{−u²} du`, nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

const MAX_NEWTON: usize = 100;

impl GaussHermite {
    /// Nodes from Newton iteration on the orthonormal Hermite recurrence.
    /// The recurrence keeps the small outer weights relatively accurate,
    /// which matters once they are rescaled by `e^{u²}`.
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order > 256 {
            return Err(Error::domain(format!("Gauss-Hermite order must be in 1..=256, got {order}")));
        }
        let n = order;
        let pim4 = std::f64::consts::PI.powf(-0.25);
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        let mut z = 0.0;
        for i in 0..n.div_ceil(2) {
            z = match i {
                0 => {
                    let s = (2 * n + 1) as f64;
                    s.sqrt() - 1.85575 * s.powf(-1.0 / 6.0)
                }
                1 => z - 1.14 * (n as f64).powf(0.426) / z,
                2 => 1.86 * z - 0.86 * x[0],
                3 => 1.91 * z - 0.91 * x[1],
                _ => 2.0 * z - x[i - 2],
            };
            for iter in 0..=MAX_NEWTON {
                let (p1, p2) = hermite_pair(n, z, pim4);
                let step = p1 / ((2.0 * n as f64).sqrt() * p2);
                z -= step;
                if step.abs() <= 4.0 * f64::EPSILON * z.abs().max(1.0) {
                    break;
                }
                if iter == MAX_NEWTON {
                    return Err(Error::precondition(format!("Gauss-Hermite root {i} of order {n} did not converge")));
                }
            }
            // weight from the converged root
            let (_, p2) = hermite_pair(n, z, pim4);
            let pp = (2.0 * n as f64).sqrt() * p2;
            x[i] = z;
            x[n - 1 - i] = -z;
            w[i] = 2.0 / (pp * pp);
            w[n - 1 - i] = w[i];
        }
        if n % 2 == 1 {
            x[n / 2] = 0.0;
        }
        x.reverse();
        w.reverse();
        Ok(Self { nodes: x, weights: w })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Weights `wᵢ e^{uᵢ²}` for integrands that carry their own Gaussian.
    pub fn unweighted(&self) -> Vec<f64> {
        self.nodes.iter().zip(&self.weights).map(|(u, w)| w * (u * u).exp()).collect()
    }
}

/// Orthonormal Hermite values `(pₙ(z), pₙ₋₁(z))`, scaled by `π^{−1/4}`.
fn hermite_pair(n: usize, z: f64, pim4: f64) -> (f64, f64) {
    let (mut p1, mut p2) = (pim4, 0.0);
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
    }
    (p1, p2)
}

const PAIRWISE_BLOCK: usize = 16;

/// Pairwise (cascade) sum with a fixed split, so the rounding depends only
/// on the input order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_BLOCK {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

pub fn pairwise_sum_complex(xs: &[C64]) -> C64 {
    if xs.len() <= PAIRWISE_BLOCK {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum_complex(a) + pairwise_sum_complex(b)
    }
}
