//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p fano-core --test acceptance -- --nocapture --test-threads 1`
//! to see them in order.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use fano_core::analysis::direction_reversals;
use fano_core::dynamics::{rk4_refined, uniform_grid};
use fano_core::generators::population_generator;
use fano_core::linalg::max_abs_diff;
use fano_core::model::POLARIZED_TO_ISOTROPIC;
use fano_core::{
    coherence_lifetime, derive_rates, matrix_exponential, oscillation_frequency,
    positivity_report, propagate, steady_state, sweep_steady, time_series, DenseMatrix,
    FieldMode, PopulationState, SweepResult, SystemParams, TimeSeries,
};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

const SAMPLES: usize = 2048;
const T_MAX: f64 = 20.0;
const ORACLE_TOLERANCE: f64 = 1e-8;

/// Reference parameter sets: (label, γ_a/γ_b, Δ/γ̄, n̄).
const REFERENCE_SETS: [(&str, f64, f64, f64); 6] = [
    ("sym-under-weak", 1.0, 10.0, 0.06),
    ("sym-over-weak", 1.0, 0.1, 0.06),
    ("sym-over-strong", 1.0, 0.1, 100.0),
    ("asym-under-weak", 10.0, 10.0, 0.06),
    ("asym-over-weak", 10.0, 0.1, 0.06),
    ("asym-over-strong", 10.0, 0.1, 100.0),
];

fn reference(label: &str) -> SystemParams {
    let (_, ratio, delta, n_bar) = REFERENCE_SETS.iter().find(|p| p.0 == label).copied().unwrap();
    SystemParams::dimensionless(ratio, delta, n_bar)
}

fn trajectory(params: &SystemParams) -> TimeSeries {
    let a = population_generator(params).unwrap();
    time_series(&a, None, &PopulationState::GROUND, None, &uniform_grid(T_MAX, SAMPLES)).unwrap()
}

fn log_axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn grid_axes() -> (Vec<f64>, Vec<f64>) {
    let mut n_bar = log_axis(0.01, 345.0, 20);
    let mut delta = log_axis(0.01, 10.0, 20);
    // pin the end points exactly
    n_bar[19] = 345.0;
    delta[0] = 0.01;
    (n_bar, delta)
}

fn sweep(ratio: f64) -> SweepResult {
    let (n_bar, delta) = grid_axes();
    sweep_steady(&SystemParams::dimensionless(ratio, 0.0, 0.0), &n_bar, &delta).unwrap()
}

fn report(id: u32, name: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id:>2}: {name} -- {detail}");
    assert!(pass, "criterion {id} failed: {name} -- {detail}");
}

#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let checkpoints = uniform_grid(T_MAX, SAMPLES);
    let mut worst = 0.0_f64;
    for (label, ratio, delta, n_bar) in REFERENCE_SETS {
        let params = SystemParams::dimensionless(ratio, delta, n_bar);
        let a = population_generator(&params).unwrap();
        let (oracle, _) = rk4_refined(a.matrix(), &PopulationState::GROUND.0, &checkpoints).unwrap();
        let exact = time_series(&a, None, &PopulationState::GROUND, None, &checkpoints).unwrap();
        let err = exact
            .states()
            .iter()
            .zip(&oracle)
            .map(|(x, y)| max_abs_diff(&x.0, y))
            .fold(0.0, f64::max);
        assert!(err.is_finite(), "set {label}");
        worst = worst.max(err);
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        "expm propagation matches RK4 on all reference sets",
        worst <= ORACLE_TOLERANCE && elapsed < 10.0,
        format!("max |diff| = {worst:.3e} (tol {ORACLE_TOLERANCE:e}), {elapsed:.2} s (limit 10 s)"),
    );
}

#[test]
fn criterion_02_trace_and_positivity() {
    let mut trace_dev = 0.0_f64;
    let mut min_eig = f64::INFINITY;
    for (label, ..) in REFERENCE_SETS {
        let series = trajectory(&reference(label));
        assert_eq!(series.len(), SAMPLES);
        for x in series.states() {
            trace_dev = trace_dev.max((x.trace() - 1.0).abs());
        }
        min_eig = min_eig.min(positivity_report(&series, 1e-9).unwrap().min_eigenvalue);
    }
    report(
        2,
        "trace and positivity along reference trajectories",
        trace_dev <= 1e-11 && min_eig >= -1e-9,
        format!("max trace deviation {trace_dev:.3e} (tol 1e-11), min eigenvalue {min_eig:.3e} (tol -1e-9)"),
    );
}

#[test]
fn criterion_03_steady_state_consistency() {
    let start = Instant::now();
    let result = sweep(1.0);
    let elapsed = start.elapsed().as_secs_f64();
    let failures: Vec<String> = result
        .failures()
        .map(|(i, j, e)| format!("({}, {}): {e}", result.n_bar_axis[i], result.delta_over_gamma_axis[j]))
        .collect();
    let worst = result
        .cells
        .iter()
        .filter_map(|c| c.outcome.as_ref().ok())
        .map(|r| r.method_agreement)
        .fold(0.0, f64::max);
    report(
        3,
        "nullspace vs long-time propagation on 20x20 grid",
        failures.is_empty() && worst <= 1e-8 && elapsed < 30.0,
        format!(
            "max disagreement {worst:.3e} (tol 1e-8), {} failed cells {failures:?}, {elapsed:.2} s (limit 30 s)",
            failures.len()
        ),
    );
}

#[test]
fn criterion_04_quarter_bound() {
    let result = sweep(1.0);
    let (i, j, max) = SweepResult::argmax(&result.coherence_magnitude).unwrap();
    report(
        4,
        "|rho_ab|_steady <= 0.25 everywhere, max > 0.20",
        result.all_valid() && max <= 0.25 + 1e-9 && max > 0.20,
        format!(
            "max {max:.6} at n_bar={:.4}, delta/gamma={:.4}",
            result.n_bar_axis[i], result.delta_over_gamma_axis[j]
        ),
    );
}

#[test]
fn criterion_05_ratio_bound_and_plateau() {
    let result = sweep(1.0);
    let (_, _, max) = SweepResult::argmax(&result.coherence_ratio).unwrap();
    let corner = result.coherence_ratio[19][0];
    assert_eq!(result.n_bar_axis[19], 345.0);
    assert_eq!(result.delta_over_gamma_axis[0], 0.01);
    report(
        5,
        "coherence ratio <= 0.5 everywhere, >= 0.45 at strongest-pump/smallest-splitting cell",
        result.all_valid() && max <= 0.5 + 1e-9 && corner >= 0.45,
        format!("max ratio {max:.9}, corner ratio {corner:.9}"),
    );
}

#[test]
fn criterion_06_underdamped_oscillation() {
    let params = reference("sym-under-weak");
    let w = oscillation_frequency(&trajectory(&params)).unwrap();
    let rel = w.map(|w| (w - params.delta).abs() / params.delta);
    report(
        6,
        "underdamped Re rho_ab oscillates at Delta",
        rel.is_some_and(|r| r <= 0.05),
        format!("detected {w:?} vs Delta = {} (relative error {rel:?}, tol 0.05)", params.delta),
    );
}

#[test]
fn criterion_07_overdamped_monotonicity() {
    let series = trajectory(&reference("sym-over-weak"));
    let after: Vec<f64> = series
        .times()
        .iter()
        .zip(series.coherence_magnitudes())
        .filter(|(t, _)| **t >= 2.0)
        .map(|(_, c)| c)
        .collect();
    // A derivative sign change is counted when the curve reverses by more
    // than the certified trajectory accuracy (the RK4 agreement tolerance).
    let reversals = direction_reversals(&after, ORACLE_TOLERANCE);
    let raw = direction_reversals(&after, 0.0);
    let peak = after.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let overshoot = peak - after[after.len() - 1];
    report(
        7,
        "overdamped weak-pump |rho_ab| has no derivative sign change after t = 2",
        reversals == 0,
        format!(
            "{reversals} reversals at resolution {ORACLE_TOLERANCE:e}; unresolved: {raw} reversal(s), overshoot {overshoot:.2e} of {peak:.4e}"
        ),
    );
}

#[test]
fn criterion_08_coherence_lifetime() {
    let series = trajectory(&reference("sym-under-weak"));
    let stationary = series.coherence_magnitudes()[SAMPLES - 1];
    let lifetime = coherence_lifetime(&series, 0.05 * stationary).unwrap();
    report(
        8,
        "underdamped coherence lifetime within a factor 3 of 1/gamma_bar",
        (1.0 / 3.0..=3.0).contains(&lifetime),
        format!("lifetime {lifetime:.4} (gamma_bar = 1)"),
    );
}

#[test]
fn criterion_09_symmetric_dominance() {
    let symmetric = sweep(1.0);
    let asymmetric = sweep(10.0);
    let mut worst = f64::INFINITY;
    for (s_row, a_row) in symmetric.coherence_magnitude.iter().zip(&asymmetric.coherence_magnitude) {
        for (s, a) in s_row.iter().zip(a_row) {
            worst = worst.min(s - a);
        }
    }
    report(
        9,
        "symmetric steady coherence >= asymmetric at every cell",
        symmetric.all_valid() && asymmetric.all_valid() && worst >= 0.0,
        format!("min (symmetric - asymmetric) = {worst:.3e}"),
    );
}

#[test]
fn criterion_10_null_tests() {
    let mut worst_ground = 0.0_f64;
    for ratio in [1.0, 10.0] {
        for delta in [0.0, 0.1, 10.0] {
            let r = steady_state(&SystemParams::dimensionless(ratio, delta, 0.0)).unwrap();
            worst_ground = worst_ground.max(max_abs_diff(&r.x_ss.0, &PopulationState::GROUND.0));
        }
    }
    let mut worst_coherence = 0.0_f64;
    for (label, ..) in REFERENCE_SETS {
        let params = reference(label).with_field_mode(FieldMode::Isotropic);
        let series = trajectory(&params);
        for c in series.coherence_magnitudes() {
            worst_coherence = worst_coherence.max(c);
        }
    }
    let (n_bar, delta) = grid_axes();
    let iso = sweep_steady(
        &SystemParams::dimensionless(1.0, 0.0, 0.0).with_field_mode(FieldMode::Isotropic),
        &n_bar,
        &delta,
    )
    .unwrap();
    let worst_sweep = iso.coherence_magnitude.iter().flatten().fold(0.0_f64, |m, &v| m.max(v));
    report(
        10,
        "no pump gives the ground state; isotropic p = 0 gives no coherence",
        worst_ground <= 1e-10 && worst_coherence <= 1e-12 && iso.all_valid() && worst_sweep <= 1e-12,
        format!(
            "|x_ss - ground| = {worst_ground:.1e}, trajectory |rho_ab| <= {worst_coherence:.1e}, sweep |rho_ab| <= {worst_sweep:.1e}"
        ),
    );
}

#[test]
fn criterion_11_rate_identity() {
    let expected = 3.0 / (16.0 * PI);
    let mut worst = 0.0_f64;
    for gamma in [1e-3, 0.5, 1.0, 7.0, 2.0 * PI * 5.75e6] {
        let params = SystemParams {
            gamma_a_iso: gamma,
            gamma_b_iso: 3.0 * gamma,
            ..SystemParams::dimensionless(1.0, 0.0, 1.0)
        };
        let rates = derive_rates(&params).unwrap();
        for ratio in [rates.gamma_a_pol / params.gamma_a_iso, rates.gamma_b_pol / params.gamma_b_iso] {
            worst = worst.max((ratio - expected).abs() / expected);
        }
    }
    report(
        11,
        "gamma_pol / gamma_iso = 3/(16 pi)",
        worst <= 2.0 * f64::EPSILON && POLARIZED_TO_ISOTROPIC == expected,
        format!("max relative deviation {worst:.2e}"),
    );
}

fn random_params(rng: &mut StdRng) -> SystemParams {
    let ratio = rng.random_range(1.0..10.0);
    let delta = 10f64.powf(rng.random_range(-2.0..1.0));
    let n_bar = 10f64.powf(rng.random_range(-2.0..2.5));
    let mode = if rng.random_bool(0.5) {
        FieldMode::Isotropic
    } else {
        FieldMode::PolarizedAnisotropic
    };
    SystemParams::dimensionless(ratio, delta, n_bar)
        .with_p(rng.random_range(-1.0..=1.0))
        .with_field_mode(mode)
}

#[test]
fn criterion_12_linalg_properties() {
    // rotation closed form
    let rot = matrix_exponential(&DenseMatrix::from_rows(&[[0.0, FRAC_PI_2], [-FRAC_PI_2, 0.0]])).unwrap();
    let rotation_err = rot.sub(&DenseMatrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]])).max_abs();

    let mut semigroup_err = 0.0_f64;
    let mut trace_err = 0.0_f64;
    for seed in 0..100u64 {
        let mut rng = StdRng::seed_from_u64(seed);
        let params = random_params(&mut rng);
        let a = population_generator(&params).unwrap();
        let t1 = rng.random_range(0.0..50.0);
        let t2 = rng.random_range(0.0..50.0);
        let e1 = matrix_exponential(&a.matrix().scale(t1)).unwrap();
        let e2 = matrix_exponential(&a.matrix().scale(t2)).unwrap();
        let e12 = matrix_exponential(&a.matrix().scale(t1 + t2)).unwrap();
        semigroup_err = semigroup_err.max(e1.matmul(&e2).sub(&e12).max_abs());

        // random valid initial state: mixture of ground and an excited pure state
        let w = rng.random_range(0.0..1.0);
        let theta = rng.random_range(0.0..PI);
        let phi = rng.random_range(0.0..2.0 * PI);
        let (ca, cb) = (theta.cos(), theta.sin());
        let x0 = PopulationState([
            w * ca * ca,
            w * cb * cb,
            1.0 - w,
            w * ca * cb * phi.cos(),
            w * ca * cb * phi.sin(),
        ]);
        let t = rng.random_range(0.0..50.0);
        let x = propagate(&a, &x0, t).unwrap();
        trace_err = trace_err.max((x.trace() - 1.0).abs());
    }
    report(
        12,
        "expm rotation, semigroup and trace preservation",
        rotation_err <= 1e-10 && semigroup_err <= 1e-10 && trace_err <= 1e-11,
        format!(
            "rotation {rotation_err:.1e}, semigroup {semigroup_err:.1e} (tol 1e-10), trace {trace_err:.1e} (tol 1e-11) over 100 seeds"
        ),
    );
}
