//! Reduced spin state after tracing out momentum.
//!
//! A normalized packet reduces to `ρ = ½ [[1+γ, δ], [δ*, 1−γ]]` with
//! `γ = ∫(|a₁|² − |a₂|²) dp` and `δ = 2∫ a₁ a₂* dp`.

use crate::error::{Error, Result};
use crate::kinematics::rapidity;
use crate::packets::SpinorPacket;
use crate::spin::Mat2;
use crate::C64;

/// Norm drift beyond this is a quadrature failure, not round-off.
pub const NORM_TOLERANCE: f64 = 1e-6;
/// Slack allowed on `γ² + |δ|² ≤ 1`.
pub const POSITIVITY_SLACK: f64 = 1e-10;
/// Above this `ξ/m` the narrow-packet formula is outside its regime.
pub const NARROW_PACKET_LIMIT: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinDensityMatrix {
    gamma: f64,
    delta: C64,
}

impl SpinDensityMatrix {
    pub fn new(gamma: f64, delta: C64) -> Result<Self> {
        if !(gamma.is_finite() && delta.re.is_finite() && delta.im.is_finite()) {
            return Err(Error::domain("non-finite density matrix entries"));
        }
        let r2 = gamma * gamma + delta.norm_sqr();
        if r2 > 1.0 + POSITIVITY_SLACK {
            return Err(Error::precondition(format!("density matrix is not positive: γ² + |δ|² = {r2}")));
        }
        Ok(Self { gamma, delta })
    }

    /// Pure state `|s⟩⟨s|` for a normalized spinor.
    pub fn pure(s: &crate::spin::Spinor) -> Result<Self> {
        let n = s.norm_sqr();
        let [a, b] = s.0;
        Self::new((a.norm_sqr() - b.norm_sqr()) / n, 2.0 * a * b.conj() / n)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> C64 {
        self.delta
    }

    /// The same state with `δ → −δ`.
    pub fn with_flipped_coherence(&self) -> Self {
        Self { gamma: self.gamma, delta: -self.delta }
    }

    pub fn matrix(&self) -> Mat2 {
        let h = C64::new(0.5, 0.0);
        Mat2::new(h * (1.0 + self.gamma), h * self.delta, h * self.delta.conj(), h * (1.0 - self.gamma))
    }

    /// `√(γ² + |δ|²)`, capped at 1.
    pub fn bloch_radius(&self) -> f64 {
        (self.gamma * self.gamma + self.delta.norm_sqr()).sqrt().min(1.0)
    }

    /// `(λ₊, λ₋) = ((1 + r)/2, (1 − r)/2)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let r = self.bloch_radius();
        (0.5 * (1.0 + r), 0.5 * (1.0 - r))
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.trace_product(self)
    }

    /// `Tr ρσ` from the matrix product.
    pub fn trace_product(&self, other: &SpinDensityMatrix) -> f64 {
        (self.matrix() * other.matrix()).trace().re
    }

    /// Largest entrywise difference from `other`.
    pub fn distance(&self, other: &SpinDensityMatrix) -> f64 {
        (self.matrix() - other.matrix()).max_abs()
    }
}

/// Traces momentum out of a packet whose norm is within [`NORM_TOLERANCE`]
/// of one. `γ` and `δ` are divided by the quadrature norm so the result has
/// unit trace.
pub fn reduce(packet: &SpinorPacket) -> Result<SpinDensityMatrix> {
    let norm = packet.norm_sqr();
    if norm.is_nan() || (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::precondition(format!("packet norm² {norm} is off by more than {NORM_TOLERANCE}")));
    }
    let (a1, a2) = (packet.amp1(), packet.amp2());
    let imbalance: Vec<f64> = a1.iter().zip(a2).map(|(x, y)| x.norm_sqr() - y.norm_sqr()).collect();
    let coherence: Vec<C64> = a1.iter().zip(a2).map(|(x, y)| x * y.conj()).collect();
    let grid = packet.grid();
    let gamma = grid.integrate(&imbalance) / norm;
    let delta = grid.integrate_complex(&coherence) * (2.0 / norm);
    SpinDensityMatrix::new(gamma, delta)
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `S = −Σ λ ln λ` in nats.
pub fn von_neumann_entropy(rho: &SpinDensityMatrix) -> f64 {
    let (lp, lm) = rho.eigenvalues();
    (-(xlnx(lp) + xlnx(lm))).max(0.0)
}

/// Narrow-packet coherence `δ = 1 − (ξ²/8m²) tanh²(θ/2)` of the boosted
/// σˣ eigenstate. Only meaningful for `ξ/m` up to [`NARROW_PACKET_LIMIT`]
/// (see [`is_narrow_packet`]).
pub fn analytic_delta(xi: f64, m: f64, v: f64) -> Result<f64> {
    if !(xi.is_finite() && xi >= 0.0) {
        return Err(Error::domain(format!("width must be non-negative, got {xi}")));
    }
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::domain(format!("mass must be positive, got {m}")));
    }
    let t = (0.5 * rapidity(v)?.theta).tanh();
    Ok(1.0 - xi * xi / (8.0 * m * m) * t * t)
}

pub fn is_narrow_packet(xi: f64, m: f64) -> bool {
    xi / m <= NARROW_PACKET_LIMIT
}

/// `S = −½[(1+δ)ln(1+δ) + (1−δ)ln(1−δ)] + ln 2`.
pub fn analytic_entropy(delta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain(format!("δ must lie in [0, 1], got {delta}")));
    }
    let s = -0.5 * (xlnx(1.0 + delta) + xlnx(1.0 - delta)) + std::f64::consts::LN_2;
    Ok(s.max(0.0))
}
