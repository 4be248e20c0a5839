//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wigner_lab::experiment::{run_clicks, ExperimentConfig, Format};
use wigner_lab::kinematics::FourMomentum;
use wigner_lab::measurement::{
    boosted_orthogonality, click_oracle, click_simulator, detector_efficiency, mean_efficiency, ClickSetup,
    MeasurementSetup,
};
use wigner_lab::packets::{sigma_x_packet, GridScheme, MomentumGrid, SpinorProfile};
use wigner_lab::spinreduce::{analytic_delta, analytic_entropy, reduce, von_neumann_entropy, SpinDensityMatrix};
use wigner_lab::wigner::{boost_packet, closed_form_sigma_x, wigner_matrix};
use wigner_lab::BoostParams;

const M: f64 = 1.0;

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn gh(order: usize) -> GridScheme {
    GridScheme::GaussHermite { order }
}

fn boost(v: f64) -> BoostParams {
    BoostParams::new(v, M).unwrap()
}

fn boosted_state(xi: f64, v: f64, order: usize) -> SpinDensityMatrix {
    let grid = Arc::new(MomentumGrid::for_width(xi, gh(order)).unwrap());
    reduce(&boost_packet(&sigma_x_packet(xi, grid).unwrap(), &boost(v)).unwrap()).unwrap()
}

fn narrow_packet_oracle() -> Outcome {
    let start = Instant::now();
    let numeric_05 = 1.0 - boosted_state(0.05, 0.8, 24).delta().norm();
    let elapsed = start.elapsed();
    let analytic_05 = 1.0 - analytic_delta(0.05, M, 0.8).unwrap();
    let ratio =
        |xi: f64, v: f64| (1.0 - boosted_state(xi, v, 24).delta().norm()) / (1.0 - analytic_delta(xi, M, v).unwrap());
    let (r05, r02) = (numeric_05 / analytic_05, ratio(0.02, 0.8));
    let mut worst: f64 = 1.0;
    for xi in [0.01, 0.02, 0.05] {
        for v in [0.3, 0.5, 0.8, 0.95] {
            let r = ratio(xi, v);
            if (r - 1.0).abs() > (worst - 1.0).abs() {
                worst = r;
            }
        }
    }
    let within = (analytic_05 - 7.8125e-5).abs() <= 1e-15 && (r05 - 1.0).abs() <= 0.05 && (worst - 1.0).abs() <= 0.05;
    let toward_one = (r02 - 1.0).abs() < (r05 - 1.0).abs();
    let fast = elapsed < Duration::from_secs(5);
    outcome(
        within && toward_one && fast,
        format!(
            "1-|d| = {numeric_05:.6e} vs {analytic_05:.6e} (ratio {r05:.4}); xi=0.02 ratio {r02:.4}; \
             worst ratio over grid {worst:.4}; {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn static_limits() -> Outcome {
    let rho = boosted_state(0.05, 0.0, 24);
    let s = von_neumann_entropy(&rho);
    let d = rho.delta().norm();
    let b0 = boost(0.0);
    let eta_mean = mean_efficiency(0.05, &b0, gh(24)).unwrap();
    let eta_point = [[0.0, 0.0, 0.0], [0.3, -0.2, 0.1], [2.0, 1.0, -1.5]]
        .iter()
        .map(|&p| (detector_efficiency(&FourMomentum::on_shell(p, M).unwrap(), &b0).unwrap() - 1.0).abs())
        .fold(0.0, f64::max);
    let setup = MeasurementSetup::with_sigma_x_records(0.05, 0.3, b0, gh(24)).unwrap();
    let cross = boosted_orthogonality(&setup).unwrap().cross_trace;
    let pass = s <= 1e-10
        && (d - 1.0).abs() <= 1e-10
        && (eta_mean - 1.0).abs() <= 1e-10
        && eta_point <= 1e-10
        && cross.abs() <= 1e-10;
    outcome(
        pass,
        format!(
            "S = {s:.1e}, |d-1| = {:.1e}, |eta-1| = {:.1e}, cross = {cross:.1e}",
            (d - 1.0).abs(),
            (eta_mean - 1.0).abs()
        ),
    )
}

fn wigner_unitarity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let momenta: Vec<FourMomentum> = (0..1000)
        .map(|_| {
            let p = [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)];
            FourMomentum::on_shell(p, M).unwrap()
        })
        .collect();
    let mut worst = 0.0f64;
    for v in [0.5, -0.5, 0.9, -0.9, 0.99, -0.99] {
        let b = boost(v);
        for p in &momenta {
            worst = worst.max(wigner_matrix(p, &b).unwrap().unitarity_defect());
        }
    }
    let mut rest = 0.0f64;
    for v in [0.0, 0.5, -0.9, 0.99] {
        let d = wigner_matrix(&FourMomentum::at_rest(M), &boost(v)).unwrap().matrix;
        rest = rest.max((d - wigner_lab::Mat2::identity()).max_abs());
    }
    outcome(worst <= 1e-12 && rest <= 1e-12, format!("max |D'D - I| = {worst:.2e}, rest |D - I| = {rest:.2e}"))
}

fn pipeline_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for (xi, v) in [(0.05, 0.8), (0.3, -0.6), (0.2, 0.95)] {
        let b = boost(v);
        let grid = Arc::new(MomentumGrid::for_width(xi, gh(16)).unwrap());
        let out = boost_packet(&sigma_x_packet(xi, grid).unwrap(), &b).unwrap();
        let profile = SpinorProfile::sigma_x(xi).unwrap();
        for (i, &node) in out.grid().nodes().iter().enumerate() {
            let p = FourMomentum::on_shell(node, M).unwrap();
            let q = wigner_lab::kinematics::apply_inverse_boost(&p, &b);
            let (b1, b2) = closed_form_sigma_x(&p, &b, C64::new(profile.scalar(q.spatial()), 0.0)).unwrap();
            worst = worst.max((out.amp1()[i] - b1).norm()).max((out.amp2()[i] - b2).norm());
        }
    }
    outcome(worst <= 1e-12, format!("max node difference {worst:.2e}"))
}

fn norm_preservation() -> Outcome {
    let mut worst = 0.0f64;
    let mut decreasing = true;
    let mut at_largest = (0.0, 0.0);
    for xi in [0.05, 0.1, 0.2, 0.3] {
        for v in [0.5, 0.8, 0.9] {
            let err = |order: usize| {
                let grid = Arc::new(MomentumGrid::for_width(xi, gh(order)).unwrap());
                (boost_packet(&sigma_x_packet(xi, grid).unwrap(), &boost(v)).unwrap().norm_sqr() - 1.0).abs()
            };
            let (e24, e48) = (err(24), err(48));
            worst = worst.max(e24);
            // Below 1e-12 both orders sit at round-off.
            decreasing &= e48 < e24 || e24 <= 1e-12;
            if xi == 0.3 && v == 0.9 {
                at_largest = (e24, e48);
            }
        }
    }
    outcome(
        worst <= 1e-6 && decreasing,
        format!("max |norm-1| = {worst:.2e}; xi=0.3 v=0.9: {:.2e} -> {:.2e}", at_largest.0, at_largest.1),
    )
}

fn entropy_consistency() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    for xi in [0.05, 0.2] {
        for v in [0.0, 0.3, 0.8, 0.95] {
            let rho = boosted_state(xi, v, 24);
            if rho.gamma().abs() <= 1e-9 {
                let gap = (analytic_entropy(rho.delta().norm()).unwrap() - von_neumann_entropy(&rho)).abs();
                worst = worst.max(gap);
                checked += 1;
            }
        }
    }
    let s0 = von_neumann_entropy(&boosted_state(0.05, 0.0, 24));
    let s8 = von_neumann_entropy(&boosted_state(0.05, 0.8, 24));
    outcome(
        checked > 0 && worst <= 1e-9 && s8 - s0 > 0.0,
        format!("{checked} states, max gap {worst:.2e}; S(0.8) - S(0) = {:.3e}", s8 - s0),
    )
}

fn collapse_invariance() -> Outcome {
    let mut zero_rows_exact = true;
    let mut iff_holds = true;
    let mut rows = 0;
    for v in [0.0, 0.3, 0.5, 0.8, 0.95] {
        for c in [0.0, 0.3, 0.7] {
            let setup = MeasurementSetup::with_sigma_x_records(0.05, c, boost(v), gh(24)).unwrap();
            let o = boosted_orthogonality(&setup).unwrap();
            let identical = o.states.up.distance(&o.states.diag) <= 1e-12;
            if c == 0.0 {
                zero_rows_exact &= o.residual == 0.0;
            } else {
                iff_holds &= (o.residual == 0.0) == identical;
            }
            rows += 1;
        }
    }
    outcome(zero_rows_exact && iff_holds, format!("{rows} rows; c=0 exact: {zero_rows_exact}; c!=0 iff: {iff_holds}"))
}

fn click_statistics() -> Outcome {
    let start = Instant::now();
    let n = 1_000_000u64;
    let setup = ClickSetup::sigma_x(0.3, boost(0.8)).unwrap();
    let report = click_simulator(&setup, n, 0xC0FFEE).unwrap();
    let ((ps, _), (pm, _)) = click_oracle(&setup, gh(24)).unwrap();
    let z = |hat: f64, p: f64| {
        let p = p.clamp(0.0, 1.0);
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        if sigma > 0.0 {
            (hat - p) / sigma
        } else if hat == p {
            0.0
        } else {
            f64::INFINITY
        }
    };
    let (zs, zm) = (z(report.static_frame.p_hat_up, ps), z(report.moving_frame.p_hat_up, pm));

    let combined = (report.static_frame.stderr.powi(2) + report.moving_frame.stderr.powi(2)).sqrt();
    let separation = (report.static_frame.p_hat_up - report.moving_frame.p_hat_up).abs() / combined;

    let mut cfg = ExperimentConfig::new(vec![0.3], vec![0.0, 0.8]);
    cfg.samples = n;
    cfg.format = Format::Csv;
    let render = || {
        let table = run_clicks(&cfg).unwrap();
        let mut buf = Vec::new();
        table.write(&cfg.meta(wigner_lab::experiment::Mode::Clicks), cfg.format, &mut buf).unwrap();
        buf
    };
    let identical = render() == render();
    let elapsed = start.elapsed();
    outcome(
        zs.abs() <= 4.0 && zm.abs() <= 4.0 && identical && separation > 5.0 && elapsed < Duration::from_secs(30),
        format!(
            "z static {zs:.2}, z moving {zm:.2}; separation {separation:.1} sigma; reruns identical: {identical}; {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn main() -> ExitCode {
    rayon::ThreadPoolBuilder::new().num_threads(4).build_global().expect("fresh global pool");
    let start = Instant::now();
    let criteria: [(&str, Check); 8] = [
        ("narrow-packet oracle", narrow_packet_oracle),
        ("static limits", static_limits),
        ("Wigner unitarity", wigner_unitarity),
        ("pipeline equivalence", pipeline_equivalence),
        ("norm preservation", norm_preservation),
        ("entropy consistency", entropy_consistency),
        ("collapse invariance", collapse_invariance),
        ("click statistics", click_statistics),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.pass);
        println!("[{}] {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    let total = start.elapsed();
    let fast = total < Duration::from_secs(60);
    failed += usize::from(!fast);
    println!("[{}] 9. suite runtime (4 threads): {:.2}s", if fast { "PASS" } else { "FAIL" }, total.as_secs_f64());
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
