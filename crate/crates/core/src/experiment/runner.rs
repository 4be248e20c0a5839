use std::sync::Arc;

use rayon::prelude::*;

use super::table::{Cell, Meta, Table};
use super::{ExperimentConfig, ExperimentError, Mode};
use crate::kinematics::BoostParams;
use crate::measurement::{
    apparatus_states, born_probabilities, click_oracle, click_simulator, efficiency_at_mean_momentum, mean_efficiency,
    orthogonality_from_states, rescaled_probabilities, ApparatusStates, ClickSetup, ClickStats, MeasurementSetup,
    SpinBasis,
};
use crate::packets::{sigma_x_packet, GridScheme, MomentumGrid};
use crate::spinreduce::{analytic_delta, analytic_entropy, reduce, von_neumann_entropy, SpinDensityMatrix};
use crate::wigner::boost_packet;
use crate::Result;

/// Click rows whose frequency sits further than this many binomial σ from
/// the quadrature probability are flagged.
pub const CLICK_Z_LIMIT: f64 = 4.0;

/// Order-doubling acceptance: `|δ(2n) − δ(n)| ≤ REL·(1 − |δ|) + ABS`.
const CONVERGENCE_REL: f64 = 1e-4;
const CONVERGENCE_ABS: f64 = 1e-12;

/// Tolerance for "records identical" in the collapse check.
const RECORD_TOL: f64 = 1e-12;

const ENTROPY_COLUMNS: &[&str] =
    &["v", "xi_over_m", "delta_numeric", "delta_analytic", "S_numeric", "S_analytic", "rel_gap", "clamped", "flagged"];

const EFFICIENCY_COLUMNS: &[&str] = &[
    "v",
    "xi_over_m",
    "eta_mean",
    "eta_at_mean_momentum",
    "p_static_up",
    "p_static_diag",
    "p_moving_up",
    "p_moving_diag",
    "p_tilde_up_raw",
    "p_tilde_diag_raw",
    "p_tilde_up_normalized",
    "p_tilde_diag_normalized",
    "clamped",
    "flagged",
];

const COLLAPSE_COLUMNS: &[&str] = &[
    "v",
    "xi_over_m",
    "overlap_c",
    "gamma_tilde",
    "delta_tilde",
    "purity_blank",
    "cross_trace",
    "residual",
    "records_identical",
    "flagged",
];

const CLICK_COLUMNS: &[&str] = &[
    "v",
    "xi_over_m",
    "frame",
    "samples",
    "n_up",
    "n_diag",
    "p_hat_up",
    "p_hat_diag",
    "stderr",
    "p_oracle_up",
    "z_score",
    "eta_mean",
    "eta_at_mean_momentum",
    "flagged",
];

impl ExperimentConfig {
    fn scheme(&self) -> GridScheme {
        GridScheme::GaussHermite { order: self.quad_order }
    }

    /// `(v, ξ)` pairs in output order: velocities outer, widths inner.
    fn pairs(&self) -> Vec<(f64, f64)> {
        self.v_list.iter().flat_map(|&v| self.xi_list.iter().map(move |&xi| (v, xi))).collect()
    }

    pub fn meta(&self, mode: Mode) -> Meta {
        Meta {
            tool: "wigner-lab",
            version: env!("CARGO_PKG_VERSION"),
            mode: mode.as_str(),
            seed: self.seed,
            quad_order: self.quad_order,
            m: self.m,
        }
    }
}

/// Validates `cfg` and runs one experiment mode.
pub fn run(cfg: &ExperimentConfig, mode: Mode) -> std::result::Result<Table, ExperimentError> {
    cfg.validate()?;
    match mode {
        Mode::EntropySweep => run_entropy_sweep(cfg),
        Mode::EfficiencySweep => run_efficiency_sweep(cfg),
        Mode::CollapseCheck => run_collapse_check(cfg),
        Mode::Clicks => run_clicks(cfg),
    }
}

fn boosted_sigma_x_state(xi: f64, boost: &BoostParams, scheme: GridScheme) -> Result<SpinDensityMatrix> {
    let grid = Arc::new(MomentumGrid::for_width(xi, scheme)?);
    reduce(&boost_packet(&sigma_x_packet(xi, grid)?, boost)?)
}

struct EntropyRow {
    delta_numeric: f64,
    s_numeric: f64,
    converged: bool,
}

fn entropy_row(xi: f64, boost: &BoostParams, order: usize) -> EntropyRow {
    let coarse = boosted_sigma_x_state(xi, boost, GridScheme::GaussHermite { order });
    let fine = boosted_sigma_x_state(xi, boost, GridScheme::GaussHermite { order: 2 * order });
    match (coarse, fine) {
        (Ok(c), Ok(f)) => {
            let (dc, df) = (c.delta().norm(), f.delta().norm());
            let tol = CONVERGENCE_REL * (1.0 - df).abs() + CONVERGENCE_ABS;
            EntropyRow { delta_numeric: dc, s_numeric: von_neumann_entropy(&c), converged: (dc - df).abs() <= tol }
        }
        _ => EntropyRow { delta_numeric: f64::NAN, s_numeric: f64::NAN, converged: false },
    }
}

/// Numeric vs narrow-packet coherence and entropy of the boosted σˣ packet
/// for every `(v, ξ)`. A row is flagged when doubling the quadrature order
/// moves `δ` by more than a small fraction of `1 − δ`.
pub fn run_entropy_sweep(cfg: &ExperimentConfig) -> std::result::Result<Table, ExperimentError> {
    let rows: Vec<(Vec<Cell>, bool)> = cfg
        .pairs()
        .into_par_iter()
        .map(|(v, xi)| -> std::result::Result<_, ExperimentError> {
            let boost = BoostParams::new(v, cfg.m)?;
            let row = entropy_row(xi, &boost, cfg.quad_order);
            let delta_analytic = analytic_delta(xi, cfg.m, v)?;
            let s_analytic = analytic_entropy(delta_analytic)?;
            let rel_gap = if v == 0.0 {
                0.0
            } else {
                ((1.0 - row.delta_numeric) - (1.0 - delta_analytic)).abs() / (1.0 - delta_analytic)
            };
            let flagged = !row.converged || boost.clamped();
            Ok((
                vec![
                    Cell::Float(v),
                    Cell::Float(xi / cfg.m),
                    Cell::Float(row.delta_numeric),
                    Cell::Float(delta_analytic),
                    Cell::Float(row.s_numeric),
                    Cell::Float(s_analytic),
                    Cell::Float(rel_gap),
                    Cell::Bool(boost.clamped()),
                    Cell::Bool(flagged),
                ],
                flagged,
            ))
        })
        .collect::<std::result::Result<_, _>>()?;
    Ok(collect(ENTROPY_COLUMNS, rows))
}

/// Detector efficiency and the rescaled moving-observer probabilities for a
/// σˣ-prepared particle measured in the σˣ basis.
pub fn run_efficiency_sweep(cfg: &ExperimentConfig) -> std::result::Result<Table, ExperimentError> {
    let scheme = cfg.scheme();
    let rows: Vec<(Vec<Cell>, bool)> = cfg
        .pairs()
        .into_par_iter()
        .map(|(v, xi)| -> std::result::Result<_, ExperimentError> {
            let boost = BoostParams::new(v, cfg.m)?;
            let eta_mean = mean_efficiency(xi, &boost, scheme)?;
            let eta_at_mean = efficiency_at_mean_momentum(&boost)?;
            let grid = Arc::new(MomentumGrid::for_width(xi, scheme)?);
            let basis = SpinBasis::sigma_x();
            let (ps_up, ps_diag) = born_probabilities(&reduce(&sigma_x_packet(xi, grid)?)?, &basis);
            let (pm_up, pm_diag) = born_probabilities(&boosted_sigma_x_state(xi, &boost, scheme)?, &basis);
            let tilde = rescaled_probabilities(eta_mean, ps_up, ps_diag);
            let flagged = boost.clamped() || !(0.0..=1.0 + 1e-12).contains(&eta_mean);
            Ok((
                vec![
                    Cell::Float(v),
                    Cell::Float(xi / cfg.m),
                    Cell::Float(eta_mean),
                    Cell::Float(eta_at_mean),
                    Cell::Float(ps_up),
                    Cell::Float(ps_diag),
                    Cell::Float(pm_up),
                    Cell::Float(pm_diag),
                    Cell::Float(tilde.up),
                    Cell::Float(tilde.diag),
                    Cell::Float(tilde.up_normalized),
                    Cell::Float(tilde.diag_normalized),
                    Cell::Bool(boost.clamped()),
                    Cell::Bool(flagged),
                ],
                flagged,
            ))
        })
        .collect::<std::result::Result<_, _>>()?;
    Ok(collect(EFFICIENCY_COLUMNS, rows))
}

/// The boosted orthogonality condition for every `(v, ξ, c)`. Rows violate
/// the invariant when `c = 0` gives a nonzero residual, or when a zero
/// residual at `c ≠ 0` comes with distinguishable records.
pub fn run_collapse_check(cfg: &ExperimentConfig) -> std::result::Result<Table, ExperimentError> {
    let scheme = cfg.scheme();
    let states: Vec<ApparatusStates> = cfg
        .pairs()
        .into_par_iter()
        .map(|(v, xi)| {
            let setup = MeasurementSetup::with_sigma_x_records(xi, 0.0, BoostParams::new(v, cfg.m)?, scheme)?;
            apparatus_states(&setup)
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(COLLAPSE_COLUMNS);
    for ((v, xi), st) in cfg.pairs().into_iter().zip(states) {
        for &c in &cfg.overlap_list {
            let o = orthogonality_from_states(crate::C64::new(c, 0.0), st);
            let identical = st.up.distance(&st.diag) <= RECORD_TOL;
            let violated =
                (c == 0.0 && o.residual != 0.0) || (c != 0.0 && o.residual.abs() <= RECORD_TOL && !identical);
            table.push(
                vec![
                    Cell::Float(v),
                    Cell::Float(xi / cfg.m),
                    Cell::Float(c),
                    Cell::Float(st.gamma_tilde()),
                    Cell::Float(st.delta_tilde().norm()),
                    Cell::Float(o.purity_blank),
                    Cell::Float(o.cross_trace),
                    Cell::Float(o.residual),
                    Cell::Bool(identical),
                    Cell::Bool(violated),
                ],
                violated,
            );
        }
    }
    Ok(table)
}

fn z_score(p_hat: f64, p: f64, n: u64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    if sigma > 0.0 {
        (p_hat - p) / sigma
    } else if p_hat == p {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Monte Carlo clicks in both frames next to their quadrature oracles.
pub fn run_clicks(cfg: &ExperimentConfig) -> std::result::Result<Table, ExperimentError> {
    let scheme = cfg.scheme();
    let mut table = Table::new(CLICK_COLUMNS);
    for (v, xi) in cfg.pairs() {
        let boost = BoostParams::new(v, cfg.m)?;
        let setup = ClickSetup::sigma_x(xi, boost)?;
        let report = click_simulator(&setup, cfg.samples, cfg.seed)?;
        let ((os_up, _), (om_up, _)) = click_oracle(&setup, scheme)?;
        let eta_mean = mean_efficiency(xi, &boost, scheme)?;
        let eta_at_mean = efficiency_at_mean_momentum(&boost)?;
        let frames: [(&'static str, ClickStats, f64); 2] =
            [("static", report.static_frame, os_up), ("moving", report.moving_frame, om_up)];
        for (frame, stats, oracle) in frames {
            let z = z_score(stats.p_hat_up, oracle, cfg.samples);
            let flagged = boost.clamped() || z.is_nan() || z.abs() > CLICK_Z_LIMIT;
            table.push(
                vec![
                    Cell::Float(v),
                    Cell::Float(xi / cfg.m),
                    Cell::Text(frame),
                    Cell::Int(cfg.samples),
                    Cell::Int(stats.n_up),
                    Cell::Int(stats.n_diag),
                    Cell::Float(stats.p_hat_up),
                    Cell::Float(stats.p_hat_diag),
                    Cell::Float(stats.stderr),
                    Cell::Float(oracle),
                    Cell::Float(z),
                    Cell::Float(eta_mean),
                    Cell::Float(eta_at_mean),
                    Cell::Bool(flagged),
                ],
                flagged,
            );
        }
    }
    Ok(table)
}

fn collect(columns: &'static [&'static str], rows: Vec<(Vec<Cell>, bool)>) -> Table {
    let mut table = Table::new(columns);
    for (row, flagged) in rows {
        table.push(row, flagged);
    }
    table
}
