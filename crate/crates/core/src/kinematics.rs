//! Four-momenta of a massive particle and boosts along the x axis.
//!
//! The boost `Λ` is parameterized by the rapidity `θ = −atanh(v)`. Its
//! action on a four-momentum is
//!
//! ```text
//! (Λp)⁰ = p⁰ cosh θ + pˣ sinh θ,   (Λp)ˣ = pˣ cosh θ + p⁰ sinh θ
//! ```
//!
//! with the transverse components unchanged. This orientation is the one
//! for which the Wigner rotation in [`crate::wigner`] is unitary.

use crate::error::{Error, Result};

/// Largest accepted speed; faster requests are clamped and flagged.
pub const V_MAX: f64 = 1.0 - 1e-9;

/// Four-momentum `(p⁰, pˣ, pʸ, pᶻ)` in natural units.
///
/// Stored in light-cone form `p± = p⁰ ± pˣ`: an x boost only rescales
/// `p±`, and `p⁺p⁻ − p⊥²` keeps the invariant mass free of the
/// cancellation that `p⁰² − |p|²` suffers for fast particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMomentum {
    plus: f64,
    minus: f64,
    py: f64,
    pz: f64,
}

impl FourMomentum {
    pub fn new(p0: f64, px: f64, py: f64, pz: f64) -> Self {
        Self { plus: p0 + px, minus: p0 - px, py, pz }
    }

    /// The on-shell four-momentum with spatial part `pvec`.
    pub fn on_shell(pvec: [f64; 3], m: f64) -> Result<Self> {
        let p0 = on_shell_energy(pvec, m)?;
        let [px, py, pz] = pvec;
        // The larger light-cone component is a sum; the smaller one comes
        // from the mass shell instead of a cancelling difference.
        let transverse = m * m + py * py + pz * pz;
        let (plus, minus) = if px >= 0.0 {
            let plus = p0 + px;
            (plus, transverse / plus)
        } else {
            let minus = p0 - px;
            (transverse / minus, minus)
        };
        Ok(Self { plus, minus, py, pz })
    }

    /// Particle of mass `m` at rest.
    pub fn at_rest(m: f64) -> Self {
        Self { plus: m, minus: m, py: 0.0, pz: 0.0 }
    }

    pub fn p0(&self) -> f64 {
        0.5 * (self.plus + self.minus)
    }

    pub fn px(&self) -> f64 {
        0.5 * (self.plus - self.minus)
    }

    pub fn py(&self) -> f64 {
        self.py
    }

    pub fn pz(&self) -> f64 {
        self.pz
    }

    /// `(p⁰ + pˣ, p⁰ − pˣ)`.
    pub fn light_cone(&self) -> (f64, f64) {
        (self.plus, self.minus)
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.px(), self.py(), self.pz()]
    }

    pub fn spatial_norm_sqr(&self) -> f64 {
        let px = self.px();
        px * px + self.py() * self.py() + self.pz() * self.pz()
    }

    /// Minkowski square `p⁺p⁻ − pʸ² − pᶻ²`, with error-free products and a
    /// compensated sum.
    pub fn invariant_mass_sqr(&self) -> f64 {
        let mut sum = 0.0;
        let mut comp = 0.0;
        for (a, b, sign) in [(self.plus, self.minus, 1.0), (self.py(), self.py(), -1.0), (self.pz(), self.pz(), -1.0)] {
            let hi = a * b;
            let lo = a.mul_add(b, -hi);
            for term in [sign * hi, sign * lo] {
                let t = sum + term;
                comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
                sum = t;
            }
        }
        sum + comp
    }

    pub fn invariant_mass(&self) -> f64 {
        self.invariant_mass_sqr().max(0.0).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.plus.is_finite() && self.minus.is_finite() && self.py().is_finite() && self.pz().is_finite()
    }

    /// Whether `p⁰² − |p|² = m²` holds to `rel_tol` relative to `p⁰²`.
    pub fn is_on_shell(&self, m: f64, rel_tol: f64) -> bool {
        self.is_finite()
            && self.p0() > 0.0
            && (self.invariant_mass_sqr() - m * m).abs() <= rel_tol * self.p0() * self.p0()
    }
}

/// Energy of a particle of mass `m` with three-momentum `pvec`.
pub fn on_shell_energy(pvec: [f64; 3], m: f64) -> Result<f64> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::domain(format!("mass must be positive and finite, got {m}")));
    }
    if pvec.iter().any(|c| !c.is_finite()) {
        return Err(Error::domain(format!("non-finite momentum {pvec:?}")));
    }
    let [x, y, z] = pvec;
    Ok((m * m + x * x + y * y + z * z).sqrt())
}

/// Rapidity of a boost with velocity `v`, together with the clamp flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rapidity {
    pub theta: f64,
    /// Velocity actually used after clamping to `±V_MAX`.
    pub v: f64,
    pub clamped: bool,
}

/// `θ = −atanh(v)`, clamping `|v|` to [`V_MAX`].
pub fn rapidity(v: f64) -> Result<Rapidity> {
    if !v.is_finite() {
        return Err(Error::domain(format!("velocity must be finite, got {v}")));
    }
    let clamped = v.abs() > V_MAX;
    let v = if clamped { V_MAX.copysign(v) } else { v };
    // atanh on |v| keeps θ(−v) = −θ(v) bit for bit.
    Ok(Rapidity { theta: -v.abs().atanh().copysign(v), v, clamped })
}

/// An x-axis boost of a particle of mass `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParams {
    v: f64,
    theta: f64,
    m: f64,
    clamped: bool,
    cosh_half: f64,
    sinh_half: f64,
}

impl BoostParams {
    pub fn new(v: f64, m: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::domain(format!("mass must be positive and finite, got {m}")));
        }
        let r = rapidity(v)?;
        Ok(Self {
            v: r.v,
            theta: r.theta,
            m,
            clamped: r.clamped,
            cosh_half: (0.5 * r.theta).cosh(),
            sinh_half: (0.5 * r.theta).sinh(),
        })
    }

    /// The identity boost for mass `m`.
    pub fn identity(m: f64) -> Result<Self> {
        Self::new(0.0, m)
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// True when the requested velocity was clamped to `±V_MAX`.
    pub fn clamped(&self) -> bool {
        self.clamped
    }

    pub fn cosh_half(&self) -> f64 {
        self.cosh_half
    }

    pub fn sinh_half(&self) -> f64 {
        self.sinh_half
    }

    /// The boost with the opposite velocity.
    pub fn reversed(&self) -> Self {
        // -v never needs clamping if v did not
        Self::new(-self.v, self.m).expect("negated velocity of a valid boost is valid")
    }
}

/// `q = Λ⁻¹p`.
pub fn apply_inverse_boost(p: &FourMomentum, boost: &BoostParams) -> FourMomentum {
    boost_x(p, -boost.theta)
}

/// `Λp`.
pub fn apply_boost(p: &FourMomentum, boost: &BoostParams) -> FourMomentum {
    boost_x(p, boost.theta)
}

/// Boost along x by rapidity `theta`: `p⁰ ± pˣ → (p⁰ ± pˣ) e^{±θ}`.
fn boost_x(p: &FourMomentum, theta: f64) -> FourMomentum {
    if theta == 0.0 {
        return *p;
    }
    FourMomentum { plus: p.plus * theta.exp(), minus: p.minus * (-theta).exp(), py: p.py(), pz: p.pz() }
}
