//! Momentum-space grids and discretized spinor wave packets.
//!
//! A packet `Σᵣ ∫ dp aᵣ(p) |r, p⟩` is stored as the two amplitudes
//! `a₁, a₂` at the nodes of a [`MomentumGrid`]. Grids are tensor products
//! of a one-dimensional rule after the affine change of variable
//! `p = center + scale ∘ u`, and their weights carry the full momentum
//! measure `dp`, so `∫ f dp ≈ Σ wᵢ f(pᵢ)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{apply_boost, BoostParams, FourMomentum};
use crate::quadrature::{pairwise_sum, pairwise_sum_complex, GaussHermite};
use crate::spin::Spinor;
use crate::C64;

/// Default Gauss–Hermite order per axis.
pub const DEFAULT_ORDER: usize = 24;
/// Default half-width of rectangular grids, in units of the axis scale.
pub const DEFAULT_CUTOFF: f64 = 8.0;

/// One-dimensional rule used on every axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GridScheme {
    /// Gauss–Hermite in `u`; exact for `e^{−|u|²}` times low-order polynomials.
    GaussHermite { order: usize },
    /// Midpoint rule on `[−cutoff, cutoff]` in `u`.
    Rectangular { order: usize, cutoff: f64 },
}

impl GridScheme {
    pub fn order(&self) -> usize {
        match *self {
            GridScheme::GaussHermite { order } | GridScheme::Rectangular { order, .. } => order,
        }
    }

    pub fn with_order(&self, order: usize) -> GridScheme {
        match *self {
            GridScheme::GaussHermite { .. } => GridScheme::GaussHermite { order },
            GridScheme::Rectangular { cutoff, .. } => GridScheme::Rectangular { order, cutoff },
        }
    }
}

impl Default for GridScheme {
    fn default() -> Self {
        GridScheme::GaussHermite { order: DEFAULT_ORDER }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    scheme: GridScheme,
    center: [f64; 3],
    scale: [f64; 3],
    nodes: Vec<[f64; 3]>,
    weights: Vec<f64>,
}

impl MomentumGrid {
    pub fn new(scheme: GridScheme, center: [f64; 3], scale: [f64; 3]) -> Result<Self> {
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain(format!("grid center must be finite, got {center:?}")));
        }
        if scale.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::domain(format!("grid scales must be positive, got {scale:?}")));
        }
        let (u, w) = match scheme {
            GridScheme::GaussHermite { order } => {
                let rule = GaussHermite::new(order)?;
                let w = rule.unweighted();
                (rule.nodes, w)
            }
            GridScheme::Rectangular { order, cutoff } => {
                if order == 0 || !(cutoff.is_finite() && cutoff > 0.0) {
                    return Err(Error::domain(format!(
                        "rectangular grid needs order >= 1 and cutoff > 0, got {order}, {cutoff}"
                    )));
                }
                let h = 2.0 * cutoff / order as f64;
                let u = (0..order).map(|i| -cutoff + (i as f64 + 0.5) * h).collect();
                (u, vec![h; order])
            }
        };
        let n = u.len();
        let jac = scale[0] * scale[1] * scale[2];
        let mut nodes = Vec::with_capacity(n * n * n);
        let mut weights = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    nodes.push([center[0] + scale[0] * u[i], center[1] + scale[1] * u[j], center[2] + scale[2] * u[k]]);
                    weights.push(jac * w[i] * w[j] * w[k]);
                }
            }
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::precondition("grid produced a non-positive or non-finite weight"));
        }
        Ok(Self { scheme, center, scale, nodes, weights })
    }

    /// Grid centered at the origin with scale `xi` on every axis, matched to
    /// a Gaussian packet of width `xi`.
    pub fn for_width(xi: f64, scheme: GridScheme) -> Result<Self> {
        check_width(xi)?;
        Self::new(scheme, [0.0; 3], [xi; 3])
    }

    /// The same rule moved to where a packet supported on this grid lands
    /// after the boost: the center is boosted on shell and the x scale is
    /// stretched by `∂(Λp)ˣ/∂pˣ` at the center.
    pub fn transported(&self, boost: &BoostParams) -> Result<Self> {
        let c = FourMomentum::on_shell(self.center, boost.m())?;
        let image = apply_boost(&c, boost);
        let stretch = boost.theta().cosh() + boost.theta().sinh() * c.px() / c.p0();
        let scale = [self.scale[0] * stretch, self.scale[1], self.scale[2]];
        Self::new(self.scheme, image.spatial(), scale)
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    pub fn center(&self) -> [f64; 3] {
        self.center
    }

    pub fn scale(&self) -> [f64; 3] {
        self.scale
    }

    pub fn nodes(&self) -> &[[f64; 3]] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ wᵢ fᵢ` for per-node values `fᵢ`.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        let terms: Vec<f64> = self.weights.iter().zip(values).map(|(w, f)| w * f).collect();
        pairwise_sum(&terms)
    }

    pub fn integrate_complex(&self, values: &[C64]) -> C64 {
        debug_assert_eq!(values.len(), self.len());
        let terms: Vec<C64> = self.weights.iter().zip(values).map(|(w, f)| f * w).collect();
        pairwise_sum_complex(&terms)
    }

    fn same_layout(&self, other: &MomentumGrid) -> bool {
        self.scheme == other.scheme && self.center == other.center && self.scale == other.scale
    }
}

fn check_width(xi: f64) -> Result<()> {
    if xi.is_finite() && xi > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("packet width must be positive and finite, got {xi}")))
    }
}

/// Normalized Gaussian amplitude `a(p) = π^{−3/4} ξ^{−3/2} exp(−p²/(2ξ²))`.
pub fn gaussian_amplitude(p: [f64; 3], xi: f64) -> f64 {
    let p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    std::f64::consts::PI.powf(-0.75) * xi.powf(-1.5) * (-p2 / (2.0 * xi * xi)).exp()
}

/// [`gaussian_amplitude`] at every node.
pub fn gaussian_scalar(xi: f64, grid: &MomentumGrid) -> Result<Vec<f64>> {
    check_width(xi)?;
    Ok(grid.nodes().iter().map(|&p| gaussian_amplitude(p, xi)).collect())
}

/// Analytic packet `spinor ⊗ a(p)` with a Gaussian envelope of width `xi`.
/// Kept alongside discretized packets so boosts can evaluate it anywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorProfile {
    xi: f64,
    spinor: Spinor,
}

impl SpinorProfile {
    pub fn new(xi: f64, spinor: Spinor) -> Result<Self> {
        check_width(xi)?;
        if (spinor.norm_sqr() - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("profile spinor must be normalized, |s|² = {}", spinor.norm_sqr())));
        }
        Ok(Self { xi, spinor })
    }

    /// The positive σˣ eigenstate, `a₁ = a₂ = a/√2`.
    pub fn sigma_x(xi: f64) -> Result<Self> {
        Self::new(xi, Spinor::plus_x())
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn spinor(&self) -> Spinor {
        self.spinor
    }

    pub fn scalar(&self, p: [f64; 3]) -> f64 {
        gaussian_amplitude(p, self.xi)
    }

    pub fn amplitude(&self, p: [f64; 3]) -> Spinor {
        self.spinor.scale(C64::new(self.scalar(p), 0.0))
    }
}

/// Spinor amplitudes sampled on a grid.
#[derive(Debug, Clone)]
pub struct SpinorPacket {
    grid: Arc<MomentumGrid>,
    amp1: Vec<C64>,
    amp2: Vec<C64>,
    profile: Option<SpinorProfile>,
}

impl SpinorPacket {
    /// Samples `profile` at the grid nodes.
    pub fn from_profile(profile: SpinorProfile, grid: Arc<MomentumGrid>) -> Self {
        let (amp1, amp2) = grid
            .nodes()
            .par_iter()
            .map(|&p| {
                let s = profile.amplitude(p);
                (s.0[0], s.0[1])
            })
            .unzip();
        Self { grid, amp1, amp2, profile: Some(profile) }
    }

    /// Packet from raw per-node amplitudes; it has no analytic profile.
    pub fn from_amplitudes(grid: Arc<MomentumGrid>, amp1: Vec<C64>, amp2: Vec<C64>) -> Result<Self> {
        if amp1.len() != grid.len() || amp2.len() != grid.len() {
            return Err(Error::structural(format!(
                "amplitude lengths {} and {} do not match grid size {}",
                amp1.len(),
                amp2.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, amp1, amp2, profile: None })
    }

    pub fn grid(&self) -> &Arc<MomentumGrid> {
        &self.grid
    }

    pub fn amp1(&self) -> &[C64] {
        &self.amp1
    }

    pub fn amp2(&self) -> &[C64] {
        &self.amp2
    }

    pub fn profile(&self) -> Option<&SpinorProfile> {
        self.profile.as_ref()
    }

    /// `Σ w (|a₁|² + |a₂|²)`.
    pub fn norm_sqr(&self) -> f64 {
        let dens: Vec<f64> = self.amp1.iter().zip(&self.amp2).map(|(a, b)| a.norm_sqr() + b.norm_sqr()).collect();
        self.grid.integrate(&dens)
    }

    /// Rescaled to unit quadrature norm. The result no longer matches its
    /// analytic profile exactly, so the profile is dropped.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::precondition(format!("cannot normalize packet with norm² {n}")));
        }
        let s = 1.0 / n.sqrt();
        Ok(Self {
            grid: Arc::clone(&self.grid),
            amp1: self.amp1.iter().map(|a| a * s).collect(),
            amp2: self.amp2.iter().map(|a| a * s).collect(),
            profile: None,
        })
    }
}

/// Positive σˣ eigenstate with Gaussian momentum profile of width `xi`.
pub fn sigma_x_packet(xi: f64, grid: Arc<MomentumGrid>) -> Result<SpinorPacket> {
    Ok(SpinorPacket::from_profile(SpinorProfile::sigma_x(xi)?, grid))
}

/// `⟨x|y⟩ = Σ w (x̄₁ y₁ + x̄₂ y₂)`.
pub fn inner_product(x: &SpinorPacket, y: &SpinorPacket) -> Result<C64> {
    if !(Arc::ptr_eq(&x.grid, &y.grid) || x.grid.same_layout(&y.grid)) {
        return Err(Error::structural("inner product of packets on different grids"));
    }
    let terms: Vec<C64> =
        (0..x.grid.len()).map(|i| x.amp1[i].conj() * y.amp1[i] + x.amp2[i].conj() * y.amp2[i]).collect();
    Ok(x.grid.integrate_complex(&terms))
}
