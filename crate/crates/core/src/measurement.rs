//! Measurement as information transfer from system to apparatus.
//!
//! A system state `α|↖⟩ + β|↗⟩` (kets not necessarily orthogonal, overlap
//! `c = ⟨↖|↗⟩`) writes a record into an apparatus. Norm preservation of the
//! composite state forces `c (1 − ⟨A↖|A↗⟩) = 0` in the apparatus rest
//! frame, and `|c|² (Tr ρ̃²_blank − Tr ρ̃↖ρ̃↗) = 0` when the apparatus is
//! Wigner-rotated by a boost. Either the outcomes are orthogonal or the
//! records carry no imprint, in every frame.
//!
//! The module also evaluates the moving detector's efficiency `η`, Born
//! probabilities, and a Monte Carlo click simulator.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{apply_boost, apply_inverse_boost, BoostParams, FourMomentum};
use crate::packets::{gaussian_amplitude, GridScheme, MomentumGrid, SpinorPacket, SpinorProfile};
use crate::spin::Spinor;
use crate::spinreduce::{reduce, SpinDensityMatrix};
use crate::wigner::{boost_packet, wigner_matrix};
use crate::C64;

const BASIS_TOL: f64 = 1e-12;

/// Orthonormal two-outcome detector basis `{|↖⟩, |↗⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinBasis {
    up: Spinor,
    diag: Spinor,
}

impl SpinBasis {
    pub fn new(up: Spinor, diag: Spinor) -> Result<Self> {
        let ok = (up.norm_sqr() - 1.0).abs() <= BASIS_TOL
            && (diag.norm_sqr() - 1.0).abs() <= BASIS_TOL
            && up.inner(&diag).norm() <= BASIS_TOL;
        if !ok {
            return Err(Error::precondition("detector basis is not orthonormal"));
        }
        Ok(Self { up, diag })
    }

    /// `{|+x⟩, |−x⟩}`.
    pub fn sigma_x() -> Self {
        Self { up: Spinor::plus_x(), diag: Spinor::minus_x() }
    }

    /// `{|↑⟩, |↓⟩}`.
    pub fn sigma_z() -> Self {
        Self { up: Spinor::up(), diag: Spinor::down() }
    }

    pub fn up(&self) -> Spinor {
        self.up
    }

    pub fn diag(&self) -> Spinor {
        self.diag
    }
}

/// `pₖ = ⟨aₖ|ρ|aₖ⟩` for both basis vectors.
pub fn born_probabilities(rho: &SpinDensityMatrix, basis: &SpinBasis) -> (f64, f64) {
    let m = rho.matrix();
    let expect = |a: &Spinor| a.inner(&m.apply(a)).re;
    (expect(&basis.up), expect(&basis.diag))
}

/// System amplitudes, ket overlap and apparatus for the record analysis.
///
/// The apparatus is a two-level record register with a Gaussian momentum
/// profile: `apparatus.spinor()` holds the record components
/// `(a↖, a↗)` and the whole profile is the blank state. The default
/// `(1, 1)/√2` corresponds to `a_blank = √2 a↖ = √2 a↗`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetup {
    alpha: C64,
    beta: C64,
    overlap_c: C64,
    apparatus: SpinorProfile,
    boost: BoostParams,
    scheme: GridScheme,
}

impl MeasurementSetup {
    pub fn new(
        alpha: C64,
        beta: C64,
        overlap_c: C64,
        apparatus: SpinorProfile,
        boost: BoostParams,
        scheme: GridScheme,
    ) -> Result<Self> {
        if overlap_c.norm() > 1.0 {
            return Err(Error::domain(format!("|⟨↖|↗⟩| must not exceed 1, got {}", overlap_c.norm())));
        }
        let norm = alpha.norm_sqr() + beta.norm_sqr() + 2.0 * (alpha.conj() * beta * overlap_c).re;
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("system state has norm² {norm}, expected 1")));
        }
        Ok(Self { alpha, beta, overlap_c, apparatus, boost, scheme })
    }

    /// Equal real amplitudes for a real overlap `c`, σˣ record apparatus of
    /// width `xi`.
    pub fn with_sigma_x_records(xi: f64, overlap_c: f64, boost: BoostParams, scheme: GridScheme) -> Result<Self> {
        if !(-1.0 < overlap_c && overlap_c <= 1.0) {
            return Err(Error::domain(format!("overlap must lie in (-1, 1], got {overlap_c}")));
        }
        let a = C64::new((2.0 * (1.0 + overlap_c)).sqrt().recip(), 0.0);
        Self::new(a, a, C64::new(overlap_c, 0.0), SpinorProfile::sigma_x(xi)?, boost, scheme)
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    pub fn overlap_c(&self) -> C64 {
        self.overlap_c
    }

    pub fn apparatus(&self) -> &SpinorProfile {
        &self.apparatus
    }

    pub fn boost(&self) -> &BoostParams {
        &self.boost
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }
}

/// `⟨↖|↗⟩ (1 − ⟨A↖|A↗⟩)`.
pub fn static_orthogonality_residual(setup: &MeasurementSetup, record_overlap: C64) -> C64 {
    setup.overlap_c * (C64::new(1.0, 0.0) - record_overlap)
}

/// `⟨ψ_S|ψ_S⟩ − ⟨Φ_SA|Φ_SA⟩` from explicit vectors: system kets and record
/// states are realized in ℂ² with the requested overlaps and the composite
/// state is built as a tensor product in ℂ⁴.
pub fn norm_deficit(setup: &MeasurementSetup, record_overlap: C64) -> Result<f64> {
    if record_overlap.norm() > 1.0 {
        return Err(Error::domain("record overlap must have modulus at most 1"));
    }
    let embed = |c: C64| Spinor::new(c, C64::new((1.0 - c.norm_sqr()).max(0.0).sqrt(), 0.0));
    let (k_up, k_diag) = (Spinor::up(), embed(setup.overlap_c));
    let (r_up, r_diag) = (Spinor::up(), embed(record_overlap));

    let psi = [setup.alpha * k_up.0[0] + setup.beta * k_diag.0[0], setup.alpha * k_up.0[1] + setup.beta * k_diag.0[1]];
    let mut phi = [C64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            phi[2 * i + j] = setup.alpha * k_up.0[i] * r_up.0[j] + setup.beta * k_diag.0[i] * r_diag.0[j];
        }
    }
    let n_psi: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    let n_phi: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
    Ok(n_psi - n_phi)
}

/// Reduced apparatus states seen from the particle's frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApparatusStates {
    pub blank: SpinDensityMatrix,
    /// `½[[1+γ̃, δ̃], [δ̃*, 1−γ̃]]`.
    pub up: SpinDensityMatrix,
    /// `½[[1+γ̃, −δ̃], [−δ̃*, 1−γ̃]]`.
    pub diag: SpinDensityMatrix,
}

impl ApparatusStates {
    pub fn gamma_tilde(&self) -> f64 {
        self.up.gamma()
    }

    pub fn delta_tilde(&self) -> C64 {
        self.up.delta()
    }
}

fn boosted_apparatus(setup: &MeasurementSetup) -> Result<SpinorPacket> {
    let grid = Arc::new(MomentumGrid::for_width(setup.apparatus.xi(), setup.scheme)?);
    let blank = SpinorPacket::from_profile(setup.apparatus, grid);
    boost_packet(&blank, &setup.boost)
}

/// Boosts the apparatus and forms `ρ̃_blank`, `ρ̃↖`, `ρ̃↗`.
///
/// `γ̃` and `δ̃` are taken from the record pair `(b↖, b↗)` normalized
/// jointly to one, so both record states have unit trace.
pub fn apparatus_states(setup: &MeasurementSetup) -> Result<ApparatusStates> {
    let boosted = boosted_apparatus(setup)?;
    let blank = reduce(&boosted)?;
    let (b_up, b_diag) = (boosted.amp1(), boosted.amp2());
    let grid = boosted.grid();
    let norm = boosted.norm_sqr();
    let imbalance: Vec<f64> = b_up.iter().zip(b_diag).map(|(x, y)| x.norm_sqr() - y.norm_sqr()).collect();
    let coherence: Vec<C64> = b_up.iter().zip(b_diag).map(|(x, y)| x * y.conj()).collect();
    let gamma = grid.integrate(&imbalance) / norm;
    let delta = grid.integrate_complex(&coherence) * (2.0 / norm);
    let up = SpinDensityMatrix::new(gamma, delta)?;
    Ok(ApparatusStates { blank, up, diag: up.with_flipped_coherence() })
}

/// Terms of the boosted orthogonality condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostedOrthogonality {
    pub states: ApparatusStates,
    /// `Tr ρ̃²_blank`.
    pub purity_blank: f64,
    /// `Tr ρ̃↖ρ̃↗`.
    pub cross_trace: f64,
    /// `|c|² (Tr ρ̃²_blank − Tr ρ̃↖ρ̃↗)`.
    pub residual: f64,
}

pub fn orthogonality_from_states(overlap_c: C64, states: ApparatusStates) -> BoostedOrthogonality {
    let purity_blank = states.blank.purity();
    let cross_trace = states.up.trace_product(&states.diag);
    BoostedOrthogonality {
        states,
        purity_blank,
        cross_trace,
        residual: overlap_c.norm_sqr() * (purity_blank - cross_trace),
    }
}

pub fn boosted_orthogonality(setup: &MeasurementSetup) -> Result<BoostedOrthogonality> {
    Ok(orthogonality_from_states(setup.overlap_c, apparatus_states(setup)?))
}

pub fn boosted_orthogonality_residual(setup: &MeasurementSetup) -> Result<f64> {
    Ok(boosted_orthogonality(setup)?.residual)
}

/// Pointwise efficiency of the moving detector at momentum `p`:
/// `η = |K (q⁰/p⁰)^{1/2} [(q⁰+m) cosh(θ/2) + qˣ sinh(θ/2)]|²`, `q = Λ⁻¹p`.
///
/// Not clamped: `η` exceeds one away from the boosted packet's support
/// (at `p` at rest it equals `cosh θ`).
pub fn detector_efficiency(p: &FourMomentum, boost: &BoostParams) -> Result<f64> {
    let m = boost.m();
    if !p.is_on_shell(m, 1e-10) {
        return Err(Error::domain(format!("momentum {p:?} is not on shell for mass {m}")));
    }
    let q = apply_inverse_boost(p, boost);
    let k = ((q.p0() + m) * (p.p0() + m)).sqrt().recip();
    let amp = k * (q.p0() / p.p0()).sqrt() * ((q.p0() + m) * boost.cosh_half() + q.px() * boost.sinh_half());
    Ok(amp * amp)
}

/// `η̄ = ∫ dp η(p) |a(Λ⁻¹p)|²`: the efficiency averaged over the
/// moving-frame packet of the Gaussian of width `xi`.
pub fn mean_efficiency(xi: f64, boost: &BoostParams, scheme: GridScheme) -> Result<f64> {
    let grid = MomentumGrid::for_width(xi, scheme)?.transported(boost)?;
    let m = boost.m();
    let values: Vec<f64> = grid
        .nodes()
        .par_iter()
        .map(|&node| {
            let p = FourMomentum::on_shell(node, m)?;
            let a = gaussian_amplitude(apply_inverse_boost(&p, boost).spatial(), xi);
            Ok(detector_efficiency(&p, boost)? * a * a)
        })
        .collect::<Result<_>>()?;
    Ok(grid.integrate(&values))
}

/// `η` at the boosted image of the source rest momentum, `Λ(m, 0, 0, 0)`.
pub fn efficiency_at_mean_momentum(boost: &BoostParams) -> Result<f64> {
    detector_efficiency(&apply_boost(&FourMomentum::at_rest(boost.m()), boost), boost)
}

/// Moving-observer probabilities `P̃↖ = η P↖`, `P̃↗ = (1 − η) P↗`, raw and
/// renormalized to unit sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RescaledProbabilities {
    pub up: f64,
    pub diag: f64,
    pub up_normalized: f64,
    pub diag_normalized: f64,
}

pub fn rescaled_probabilities(eta: f64, p_up: f64, p_diag: f64) -> RescaledProbabilities {
    let up = eta * p_up;
    let diag = (1.0 - eta) * p_diag;
    let total = up + diag;
    let (up_normalized, diag_normalized) = if total != 0.0 { (up / total, diag / total) } else { (f64::NAN, f64::NAN) };
    RescaledProbabilities { up, diag, up_normalized, diag_normalized }
}

/// Particle preparation and detector for the click simulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClickSetup {
    preparation: Spinor,
    basis: SpinBasis,
    xi: f64,
    boost: BoostParams,
}

impl ClickSetup {
    pub fn new(preparation: Spinor, basis: SpinBasis, xi: f64, boost: BoostParams) -> Result<Self> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::domain(format!("packet width must be positive, got {xi}")));
        }
        if (preparation.norm_sqr() - 1.0).abs() > 1e-12 {
            return Err(Error::domain("preparation spinor must be normalized"));
        }
        Ok(Self { preparation, basis, xi, boost })
    }

    /// σˣ-prepared particle and σˣ detector.
    pub fn sigma_x(xi: f64, boost: BoostParams) -> Result<Self> {
        Self::new(Spinor::plus_x(), SpinBasis::sigma_x(), xi, boost)
    }

    pub fn preparation(&self) -> Spinor {
        self.preparation
    }

    pub fn basis(&self) -> SpinBasis {
        self.basis
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn boost(&self) -> &BoostParams {
        &self.boost
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Static,
    Moving,
}

impl Frame {
    pub fn as_str(&self) -> &'static str {
        match self {
            Frame::Static => "static",
            Frame::Moving => "moving",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClickStats {
    pub n_up: u64,
    pub n_diag: u64,
    pub p_hat_up: f64,
    pub p_hat_diag: f64,
    /// Binomial standard error of either frequency.
    pub stderr: f64,
    pub seed: u64,
}

impl ClickStats {
    fn from_counts(n_up: u64, n: u64, seed: u64) -> Self {
        let p = n_up as f64 / n as f64;
        Self {
            n_up,
            n_diag: n - n_up,
            p_hat_up: p,
            p_hat_diag: 1.0 - p,
            stderr: (p * (1.0 - p) / n as f64).sqrt(),
            seed,
        }
    }

    pub fn total(&self) -> u64 {
        self.n_up + self.n_diag
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClickReport {
    pub static_frame: ClickStats,
    pub moving_frame: ClickStats,
}

/// Samples per independently seeded RNG stream.
const CLICK_BLOCK: u64 = 4096;

/// Monte Carlo detector clicks in the source frame and in the moving frame.
///
/// Momenta are drawn from `|a(q)|²` (normal with standard deviation `ξ/√2`
/// per axis). Each sample uses one uniform for the outcome in both frames:
/// the static frame sees the prepared spinor, the moving frame sees it
/// rotated by `D[Λ, q]`. Block `k` of [`CLICK_BLOCK`] samples draws from
/// ChaCha stream `k` of `seed`, and counts are integers, so the result is
/// independent of scheduling and thread count.
pub fn click_simulator(setup: &ClickSetup, n: u64, seed: u64) -> Result<ClickReport> {
    if n == 0 {
        return Err(Error::domain("click simulation needs at least one sample"));
    }
    let blocks = n.div_ceil(CLICK_BLOCK);
    let (static_up, moving_up) = (0..blocks)
        .into_par_iter()
        .map(|block| simulate_block(setup, seed, block, CLICK_BLOCK.min(n - block * CLICK_BLOCK)))
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    Ok(ClickReport {
        static_frame: ClickStats::from_counts(static_up, n, seed),
        moving_frame: ClickStats::from_counts(moving_up, n, seed),
    })
}

/// [`click_simulator`] on a dedicated pool of `threads` workers.
pub fn click_simulator_with_threads(setup: &ClickSetup, n: u64, seed: u64, threads: usize) -> Result<ClickReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::precondition(format!("cannot build thread pool: {e}")))?;
    pool.install(|| click_simulator(setup, n, seed))
}

fn simulate_block(setup: &ClickSetup, seed: u64, block: u64, len: u64) -> Result<(u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let sigma = setup.xi * std::f64::consts::FRAC_1_SQRT_2;
    let m = setup.boost.m();
    let up = setup.basis.up;
    let p_static = up.inner(&setup.preparation).norm_sqr();
    let (mut n_static, mut n_moving) = (0, 0);
    for _ in 0..len {
        let q: [f64; 3] = [
            sigma * rng.sample::<f64, _>(StandardNormal),
            sigma * rng.sample::<f64, _>(StandardNormal),
            sigma * rng.sample::<f64, _>(StandardNormal),
        ];
        let u: f64 = rng.random();
        let d = wigner_matrix(&FourMomentum::on_shell(q, m)?, &setup.boost)?;
        let rotated = d.matrix.apply(&setup.preparation);
        let p_moving = up.inner(&rotated).norm_sqr() / rotated.norm_sqr();
        n_static += u64::from(u < p_static);
        n_moving += u64::from(u < p_moving);
    }
    Ok((n_static, n_moving))
}

/// Quadrature Born probabilities `(P↖, P↗)` for the click setup in the
/// static and moving frames.
pub fn click_oracle(setup: &ClickSetup, scheme: GridScheme) -> Result<((f64, f64), (f64, f64))> {
    let grid = Arc::new(MomentumGrid::for_width(setup.xi, scheme)?);
    let src = SpinorPacket::from_profile(SpinorProfile::new(setup.xi, setup.preparation)?, grid);
    let static_rho = reduce(&src)?;
    let moving_rho = reduce(&boost_packet(&src, &setup.boost)?)?;
    Ok((born_probabilities(&static_rho, &setup.basis), born_probabilities(&moving_rho, &setup.basis)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn setup(overlap: f64, v: f64) -> MeasurementSetup {
        MeasurementSetup::with_sigma_x_records(0.05, overlap, BoostParams::new(v, 1.0).unwrap(), GridScheme::default())
            .unwrap()
    }

    #[test]
    fn born_rule_examples() {
        let pure = SpinDensityMatrix::pure(&Spinor::plus_x()).unwrap();
        let (pu, pd) = born_probabilities(&pure, &SpinBasis::sigma_x());
        assert!((pu - 1.0).abs() < 1e-12 && pd.abs() < 1e-12);
        let (pu, pd) = born_probabilities(&pure, &SpinBasis::sigma_z());
        assert!((pu - 0.5).abs() < 1e-12 && (pd - 0.5).abs() < 1e-12);
    }

    #[test]
    fn basis_must_be_orthonormal() {
        assert!(SpinBasis::new(Spinor::up(), Spinor::plus_x()).is_err());
        assert!(SpinBasis::new(Spinor::up(), Spinor::real(0.0, 2.0)).is_err());
        assert!(SpinBasis::new(Spinor::minus_x(), Spinor::plus_x()).is_ok());
    }

    #[test]
    fn setup_validates_system_norm() {
        let b = BoostParams::identity(1.0).unwrap();
        let prof = SpinorProfile::sigma_x(0.1).unwrap();
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        assert!(MeasurementSetup::new(h, h, C64::new(0.0, 0.0), prof, b, GridScheme::default()).is_ok());
        assert!(MeasurementSetup::new(h, h, C64::new(0.3, 0.0), prof, b, GridScheme::default()).is_err());
    }

    #[test]
    fn static_residual_examples() {
        let s0 = setup(0.0, 0.0);
        assert_eq!(static_orthogonality_residual(&s0, C64::new(0.2, 0.1)), C64::new(0.0, 0.0));
        let s = setup(0.5, 0.0);
        assert_eq!(static_orthogonality_residual(&s, C64::new(1.0, 0.0)), C64::new(0.0, 0.0));
        assert_eq!(static_orthogonality_residual(&s, C64::new(0.0, 0.0)), C64::new(0.5, 0.0));
    }

    #[test]
    fn norm_deficit_is_weighted_residual() {
        for c in [0.0, 0.3, 0.5, 0.9] {
            let s = setup(c, 0.0);
            for r in [C64::new(0.0, 0.0), C64::new(0.4, 0.3), C64::new(1.0, 0.0), C64::new(-0.5, 0.0)] {
                let res = static_orthogonality_residual(&s, r);
                let weighted = 2.0 * (s.alpha().conj() * s.beta() * res).re;
                assert!((norm_deficit(&s, r).unwrap() - weighted).abs() < 1e-14, "c={c} r={r}");
            }
        }
    }

    #[test]
    fn static_apparatus_is_ideal() {
        let st = apparatus_states(&setup(0.3, 0.0)).unwrap();
        assert!((st.delta_tilde() - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(st.gamma_tilde().abs() < 1e-15);
        assert!(st.up.trace_product(&st.diag).abs() < 1e-12);
    }

    #[test]
    fn cross_trace_closed_form() {
        for v in [0.0, 0.5, 0.95] {
            let st = apparatus_states(&setup(0.3, v)).unwrap();
            let (g, d) = (st.gamma_tilde(), st.delta_tilde());
            let closed = 0.5 * (1.0 + g * g - d.norm_sqr());
            assert!((st.up.trace_product(&st.diag) - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn boosted_residual_examples() {
        assert_eq!(boosted_orthogonality_residual(&setup(0.0, 0.8)).unwrap(), 0.0);
        let r = boosted_orthogonality_residual(&setup(0.3, 0.0)).unwrap();
        assert!((r - 0.09).abs() < 1e-12);
        let identical = MeasurementSetup::new(
            C64::new((2.6f64).sqrt().recip(), 0.0),
            C64::new((2.6f64).sqrt().recip(), 0.0),
            C64::new(0.3, 0.0),
            SpinorProfile::new(0.05, Spinor::up()).unwrap(),
            BoostParams::identity(1.0).unwrap(),
            GridScheme::default(),
        )
        .unwrap();
        let o = boosted_orthogonality(&identical).unwrap();
        assert!(o.states.up.distance(&o.states.diag) < 1e-15);
        assert!(o.residual.abs() < 1e-15);
    }

    #[test]
    fn efficiency_is_one_at_rest_frame() {
        let b = BoostParams::identity(1.0).unwrap();
        for p in [[0.0; 3], [0.3, -0.1, 0.2], [2.0, 1.0, -3.0]] {
            let eta = detector_efficiency(&FourMomentum::on_shell(p, 1.0).unwrap(), &b).unwrap();
            assert!((eta - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn efficiency_exceeds_one_for_source_at_rest() {
        // Reported, not clamped: the measure factor q⁰/p⁰ equals cosh θ here.
        let b = BoostParams::new(0.8, 1.0).unwrap();
        let eta = detector_efficiency(&FourMomentum::at_rest(1.0), &b).unwrap();
        assert_relative_eq!(eta, b.theta().cosh(), max_relative = 1e-13);
        assert!(eta > 1.0);
        assert_relative_eq!(efficiency_at_mean_momentum(&b).unwrap(), 1.0 / b.theta().cosh(), max_relative = 1e-13);
    }

    #[test]
    fn mean_efficiency_is_moving_frame_survival_probability() {
        let b = BoostParams::new(0.8, 1.0).unwrap();
        let eta_bar = mean_efficiency(0.05, &b, GridScheme::default()).unwrap();
        let (_, (p_up, _)) = click_oracle(&ClickSetup::sigma_x(0.05, b).unwrap(), GridScheme::default()).unwrap();
        assert!((0.0..=1.0).contains(&eta_bar));
        assert!((eta_bar - p_up).abs() < 1e-12);
    }

    #[test]
    fn rescaling_reports_raw_and_normalized() {
        let r = rescaled_probabilities(0.9, 0.5, 0.5);
        assert_relative_eq!(r.up, 0.45);
        assert_relative_eq!(r.diag, 0.05);
        assert_relative_eq!(r.up_normalized, 0.9);
        assert_relative_eq!(r.up_normalized + r.diag_normalized, 1.0);
    }

    #[test]
    fn static_clicks_are_certain() {
        let s = ClickSetup::sigma_x(0.05, BoostParams::identity(1.0).unwrap()).unwrap();
        let r = click_simulator(&s, 10_000, 7).unwrap();
        assert_eq!(r.static_frame.p_hat_up, 1.0);
        assert_eq!(r.moving_frame, r.static_frame);
    }

    #[test]
    fn click_counts_independent_of_threads() {
        let s = ClickSetup::sigma_x(0.3, BoostParams::new(0.8, 1.0).unwrap()).unwrap();
        let a = click_simulator_with_threads(&s, 50_000, 11, 1).unwrap();
        let b = click_simulator_with_threads(&s, 50_000, 11, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.moving_frame.total(), 50_000);
        assert!(click_simulator(&s, 0, 1).is_err());
    }
}
