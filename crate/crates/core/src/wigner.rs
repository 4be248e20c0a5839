//! Wigner rotation of a massive spin-1/2 particle under an x-axis boost.
//!
//! For a momentum `p` and boost `Λ` with rapidity `θ`,
//!
//! ```text
//! D[Λ, p] = [ (p⁰+m) cosh(θ/2) σ⁰ + (pˣσ⁰ + i(pʸσᶻ − pᶻσʸ)) sinh(θ/2) ]
//!           / √((p⁰+m)((Λp)⁰+m))
//! ```
//!
//! and a packet transforms as `b(p) = √(q⁰/p⁰) D[Λ, q] a(q)` with `q = Λ⁻¹p`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kinematics::{apply_boost, apply_inverse_boost, BoostParams, FourMomentum};
use crate::packets::SpinorPacket;
use crate::spin::Mat2;
use crate::C64;

/// Relative on-shell tolerance for momenta handed to [`wigner_matrix`].
const ON_SHELL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerMatrix {
    /// `D[Λ, p]`.
    pub matrix: Mat2,
    /// `[(p⁰+m)((Λp)⁰+m)]^{−1/2}`.
    pub k: f64,
    /// `[p⁰/(Λp)⁰]^{1/2}`, the measure factor when `p` is the source point.
    pub jacobian: f64,
    /// `Λp`, computed by boosting `p` forward.
    pub image: FourMomentum,
}

impl WignerMatrix {
    pub fn d11(&self) -> C64 {
        self.matrix.0[0][0]
    }

    pub fn d12(&self) -> C64 {
        self.matrix.0[0][1]
    }

    pub fn d21(&self) -> C64 {
        self.matrix.0[1][0]
    }

    pub fn d22(&self) -> C64 {
        self.matrix.0[1][1]
    }

    /// `max |D†D − I|` entrywise.
    pub fn unitarity_defect(&self) -> f64 {
        (self.matrix.adjoint() * self.matrix - Mat2::identity()).max_abs()
    }
}

/// Builds `D[Λ, p]`; `p` must be on shell for `boost.m()`.
pub fn wigner_matrix(p: &FourMomentum, boost: &BoostParams) -> Result<WignerMatrix> {
    let m = boost.m();
    if !p.is_on_shell(m, ON_SHELL_TOL) {
        return Err(Error::domain(format!("momentum {p:?} is not on shell for mass {m}")));
    }
    let image = apply_boost(p, boost);
    let k = ((p.p0() + m) * (image.p0() + m)).sqrt().recip();
    let (c, s) = (boost.cosh_half(), boost.sinh_half());
    let i = C64::new(0.0, 1.0);

    let scalar = Mat2::identity().scale(C64::new((p.p0() + m) * c + p.px() * s, 0.0));
    // iε_{xij} pⁱ σʲ = i(pʸσᶻ − pᶻσʸ)
    let rotation =
        (Mat2::sigma_z().scale(C64::new(p.py(), 0.0)) - Mat2::sigma_y().scale(C64::new(p.pz(), 0.0))).scale(i * s);
    let matrix = (scalar + rotation).scale(C64::new(k, 0.0));

    Ok(WignerMatrix { matrix, k, jacobian: (p.p0() / image.p0()).sqrt(), image })
}

/// Transforms a packet into the boosted frame.
///
/// The output lives on the source grid transported by the boost (see
/// [`crate::packets::MomentumGrid::transported`]); at each of its nodes the
/// source's analytic profile is evaluated at `q = Λ⁻¹p`.
pub fn boost_packet(src: &SpinorPacket, boost: &BoostParams) -> Result<SpinorPacket> {
    let profile =
        *src.profile().ok_or_else(|| Error::structural("boost_packet needs a packet with an analytic profile"))?;
    if boost.theta() == 0.0 {
        return Ok(src.clone());
    }
    let grid = Arc::new(src.grid().transported(boost)?);
    let m = boost.m();
    let amps: Vec<(C64, C64)> = grid
        .nodes()
        .par_iter()
        .map(|&node| {
            let p = FourMomentum::on_shell(node, m)?;
            let q = apply_inverse_boost(&p, boost);
            let d = wigner_matrix(&q, boost)?;
            let jac = (q.p0() / p.p0()).sqrt();
            let b = d.matrix.apply(&profile.amplitude(q.spatial()));
            Ok((b.0[0] * jac, b.0[1] * jac))
        })
        .collect::<Result<_>>()?;
    let (amp1, amp2) = amps.into_iter().unzip();
    SpinorPacket::from_amplitudes(grid, amp1, amp2)
}

/// Boosted amplitudes of the positive σˣ eigenstate at `p`, written out
/// component by component. `a_at_q` is the scalar profile at `q = Λ⁻¹p`.
pub fn closed_form_sigma_x(p: &FourMomentum, boost: &BoostParams, a_at_q: C64) -> Result<(C64, C64)> {
    let m = boost.m();
    if !p.is_on_shell(m, ON_SHELL_TOL) {
        return Err(Error::domain(format!("momentum {p:?} is not on shell for mass {m}")));
    }
    let q = apply_inverse_boost(p, boost);
    let k = ((q.p0() + m) * (p.p0() + m)).sqrt().recip();
    let pre = k * std::f64::consts::FRAC_1_SQRT_2 * (q.p0() / p.p0()).sqrt();
    let (c, s) = (boost.cosh_half(), boost.sinh_half());
    let diag = (q.p0() + m) * c;
    let b1 = C64::new(diag + (q.px() - q.pz()) * s, q.py() * s) * pre * a_at_q;
    let b2 = C64::new(diag + (q.px() + q.pz()) * s, -q.py() * s) * pre * a_at_q;
    Ok((b1, b2))
}
