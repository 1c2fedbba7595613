//! Time propagation, steady states and the RK4 cross-check.

use crate::analysis::{coherence_magnitude, coherence_ratio};
use crate::error::{Error, Result};
use crate::generators::{population_generator, GeneratorA, GeneratorC};
use crate::linalg::{matrix_exponential, max_abs_diff, steady_nullspace, DenseMatrix};
use crate::model::{derive_rates, OpticalCoherenceState, PopulationState, SystemParams};

/// Largest allowed `‖nullspace − long-time‖∞` in [`steady_state`].
pub const STEADY_AGREEMENT_TOLERANCE: f64 = 1e-8;

/// Horizon doublings allowed while waiting for propagation to settle.
const MAX_HORIZON_DOUBLINGS: usize = 40;

/// Upper bound on the number of RK4 steps in a single oracle run.
pub const RK4_MAX_STEPS: u64 = 10_000_000;

/// Relative tolerance on grid spacing for the repeated-multiplication path.
const UNIFORM_GRID_TOLERANCE: f64 = 1e-9;

/// Sampled trajectory of the population subsystem and, optionally, the
/// optical subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    states: Vec<PopulationState>,
    optical: Option<Vec<OpticalCoherenceState>>,
}

impl TimeSeries {
    pub fn new(
        times: Vec<f64>,
        states: Vec<PopulationState>,
        optical: Option<Vec<OpticalCoherenceState>>,
    ) -> Result<Self> {
        check_grid(&times)?;
        if states.len() != times.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                got: states.len(),
            });
        }
        if let Some(z) = &optical {
            if z.len() != times.len() {
                return Err(Error::DimensionMismatch {
                    expected: times.len(),
                    got: z.len(),
                });
            }
        }
        Ok(Self {
            times,
            states,
            optical,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[PopulationState] {
        &self.states
    }

    pub fn optical(&self) -> Option<&[OpticalCoherenceState]> {
        self.optical.as_deref()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &PopulationState {
        self.states.last().expect("series is never empty")
    }

    /// `|ρ_ab|(t)` at every sample.
    pub fn coherence_magnitudes(&self) -> Vec<f64> {
        self.states.iter().map(coherence_magnitude).collect()
    }

    /// Checks every population state against its invariants.
    pub fn validate_states(&self, tol: f64) -> Result<()> {
        self.states.iter().try_for_each(|x| x.validate(tol))
    }

    /// Constant spacing of the grid, if it is uniform.
    pub fn uniform_step(&self) -> Option<f64> {
        uniform_step(&self.times)
    }
}

/// Stationary state with its cross-validation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyResult {
    pub x_ss: PopulationState,
    /// `‖A x_ss‖∞`.
    pub residual: f64,
    /// `‖x_ss − e^{AT} x_ground‖∞`.
    pub method_agreement: f64,
    /// Propagation horizon `T` at which the cross-check settled.
    pub horizon: f64,
    /// `‖A‖₁`, the scale for `residual`.
    pub generator_norm: f64,
    pub coherence_magnitude: f64,
    /// `|ρ_ab|/(ρ_aa + ρ_bb)`; zero when there is no excited population.
    pub coherence_ratio: f64,
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::NonFinite("time"));
    }
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

fn check_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite("time grid"));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("times must be strictly increasing".into()));
    }
    Ok(())
}

fn uniform_step(times: &[f64]) -> Option<f64> {
    if times.len() < 2 {
        return None;
    }
    let span = times[times.len() - 1] - times[0];
    let step = span / (times.len() - 1) as f64;
    let uniform = times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() <= UNIFORM_GRID_TOLERANCE * step);
    uniform.then_some(step)
}

fn apply(m: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    m.matvec(x)
}

fn to5(v: &[f64]) -> [f64; 5] {
    let mut out = [0.0; 5];
    out.copy_from_slice(v);
    out
}

fn to4(v: &[f64]) -> [f64; 4] {
    let mut out = [0.0; 4];
    out.copy_from_slice(v);
    out
}

/// `e^{At} x0`.
pub fn propagate(a: &GeneratorA, x0: &PopulationState, t: f64) -> Result<PopulationState> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(*x0);
    }
    let propagator = matrix_exponential(&a.matrix().scale(t))?;
    Ok(PopulationState(to5(&apply(&propagator, &x0.0))))
}

/// `e^{Ct} z0`.
pub fn propagate_optical(
    c: &GeneratorC,
    z0: &OpticalCoherenceState,
    t: f64,
) -> Result<OpticalCoherenceState> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(*z0);
    }
    let propagator = matrix_exponential(&c.matrix().scale(t))?;
    Ok(OpticalCoherenceState(to4(&apply(&propagator, &z0.0))))
}

/// Samples a linear system `dy/dt = M y` on `grid`.
///
/// Uniform grids reuse one propagator `e^{M dt}`; other grids exponentiate
/// per sample.
fn sample_linear(m: &DenseMatrix, y0: &[f64], grid: &[f64]) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(grid.len());
    let first = if grid[0] == 0.0 {
        y0.to_vec()
    } else {
        apply(&matrix_exponential(&m.scale(grid[0]))?, y0)
    };
    match uniform_step(grid) {
        Some(dt) => {
            let step = matrix_exponential(&m.scale(dt))?;
            out.push(first);
            for _ in 1..grid.len() {
                let next = apply(&step, out.last().expect("non-empty"));
                out.push(next);
            }
        }
        None => {
            out.push(first);
            for &t in &grid[1..] {
                out.push(apply(&matrix_exponential(&m.scale(t))?, y0));
            }
        }
    }
    Ok(out)
}

/// Samples the population subsystem, and the optical subsystem when `c` is
/// given (starting from `z0`, or zero).
pub fn time_series(
    a: &GeneratorA,
    c: Option<&GeneratorC>,
    x0: &PopulationState,
    z0: Option<&OpticalCoherenceState>,
    t_grid: &[f64],
) -> Result<TimeSeries> {
    check_grid(t_grid)?;
    if t_grid[0] < 0.0 {
        return Err(Error::NegativeTime(t_grid[0]));
    }
    let states = sample_linear(a.matrix(), &x0.0, t_grid)?
        .iter()
        .map(|v| PopulationState(to5(v)))
        .collect();
    let optical = match c {
        Some(c) => {
            let z0 = z0.copied().unwrap_or(OpticalCoherenceState::ZERO);
            Some(
                sample_linear(c.matrix(), &z0.0, t_grid)?
                    .iter()
                    .map(|v| OpticalCoherenceState(to4(v)))
                    .collect(),
            )
        }
        None => None,
    };
    TimeSeries::new(t_grid.to_vec(), states, optical)
}

/// Uniform grid of `n` points on `[0, t_max]`.
pub fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect(),
    }
}

fn rk4_step(m: &DenseMatrix, y: &mut [f64], h: f64, scratch: &mut [Vec<f64>; 4]) {
    let n = y.len();
    let [k1, k2, k3, k4] = scratch;
    let deriv = |out: &mut Vec<f64>, state: &[f64]| {
        for (i, o) in out.iter_mut().enumerate() {
            *o = m.row(i).iter().zip(state).map(|(a, b)| a * b).sum();
        }
    };
    let mut tmp = vec![0.0; n];
    deriv(k1, y);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k1[i];
    }
    deriv(k2, &tmp);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k2[i];
    }
    deriv(k3, &tmp);
    for i in 0..n {
        tmp[i] = y[i] + h * k3[i];
    }
    deriv(k4, &tmp);
    for i in 0..n {
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

/// Largest RK4 step accepted for a generator: `0.1/‖M‖₁`.
pub fn rk4_max_step(m: &DenseMatrix) -> f64 {
    let norm = m.norm_1();
    if norm == 0.0 {
        f64::INFINITY
    } else {
        0.1 / norm
    }
}

/// Classical RK4 for `dy/dt = M y`, stopping exactly at each time in `times`
/// (ascending, from 0). Each interval is split into equal steps no longer
/// than `dt`.
pub fn rk4_linear(m: &DenseMatrix, y0: &[f64], times: &[f64], dt: f64) -> Result<Vec<Vec<f64>>> {
    m.ensure_finite("generator")?;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: "must be positive and finite".into(),
        });
    }
    let max = rk4_max_step(m);
    if dt > max {
        return Err(Error::StepTooLarge { dt, max });
    }
    let mut y = y0.to_vec();
    let mut t = 0.0;
    let mut total_steps = 0u64;
    let n = y.len();
    let mut scratch = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        check_time(target)?;
        if target < t {
            return Err(Error::InvalidGrid("rk4 output times must be ascending".into()));
        }
        let span = target - t;
        let steps = (span / dt).ceil() as u64;
        total_steps += steps;
        if total_steps > RK4_MAX_STEPS {
            return Err(Error::StepBudgetExceeded(RK4_MAX_STEPS));
        }
        if steps > 0 {
            let h = span / steps as f64;
            for _ in 0..steps {
                rk4_step(m, &mut y, h, &mut scratch);
            }
        }
        t = target;
        out.push(y.clone());
    }
    Ok(out)
}

/// Fixed-step RK4 solution of `dx/dt = A x` at time `t`.
pub fn rk4_oracle(a: &GeneratorA, x0: &PopulationState, t: f64, dt: f64) -> Result<PopulationState> {
    let out = rk4_linear(a.matrix(), &x0.0, &[t], dt)?;
    Ok(PopulationState(to5(&out[0])))
}

/// RK4 with automatic step refinement: starts at `dt = 0.01/‖A‖₁` and halves
/// until two successive runs differ by less than `1e-10` at every requested
/// time. Returns the finer run and the step it used.
pub fn rk4_refined(m: &DenseMatrix, y0: &[f64], times: &[f64]) -> Result<(Vec<Vec<f64>>, f64)> {
    let norm = m.norm_1();
    let mut dt = if norm == 0.0 { 1e-2 } else { 1e-2 / norm };
    let mut previous = rk4_linear(m, y0, times, dt)?;
    loop {
        dt *= 0.5;
        let current = rk4_linear(m, y0, times, dt)?;
        let change = previous
            .iter()
            .zip(&current)
            .map(|(p, c)| max_abs_diff(p, c))
            .fold(0.0, f64::max);
        if change < 1e-10 {
            return Ok((current, dt));
        }
        previous = current;
    }
}

/// Horizon for the long-time cross-check of the stationary state.
///
/// Twenty inverse relaxation rates of the pumped excited levels, one hundred
/// inverse mean decay rates, and thirty lifetimes of the slower excited level,
/// whichever is longest.
pub fn steady_horizon(params: &SystemParams) -> Result<f64> {
    let rates = derive_rates(params)?;
    let gamma_bar = rates.gamma_bar;
    let mean_pump = 0.5 * (rates.r_a_pol + rates.r_b_pol);
    let slow_decay = params.gamma_a_iso.min(params.gamma_b_iso);
    Ok((100.0 / gamma_bar)
        .max(20.0 / (mean_pump + gamma_bar))
        .max(30.0 / slow_decay))
}

/// Stationary state from the constrained nullspace, cross-checked against
/// long-time propagation of the ground state.
///
/// Propagation starts at [`steady_horizon`] and the horizon is doubled (by
/// squaring the propagator) until the propagated state stops moving, so
/// slowly relaxing near-dark configurations are followed to convergence
/// rather than compared early. The nullspace result does not enter the
/// stopping rule.
pub fn steady_state(params: &SystemParams) -> Result<SteadyResult> {
    let a = population_generator(params)?;
    let x_ss = steady_nullspace(&a)?;
    let residual = a
        .matrix()
        .matvec(&x_ss.0)
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut horizon = steady_horizon(params)?;
    let mut propagator = matrix_exponential(&a.matrix().scale(horizon))?;
    let mut long_time = propagator.matvec(&PopulationState::GROUND.0);
    for _ in 0..MAX_HORIZON_DOUBLINGS {
        propagator = propagator.matmul(&propagator);
        let next = propagator.matvec(&PopulationState::GROUND.0);
        let moved = max_abs_diff(&next, &long_time);
        horizon *= 2.0;
        long_time = next;
        if moved <= 0.1 * STEADY_AGREEMENT_TOLERANCE {
            break;
        }
    }
    let method_agreement = max_abs_diff(&x_ss.0, &long_time);
    if !(method_agreement <= STEADY_AGREEMENT_TOLERANCE) {
        return Err(Error::MethodDisagreement {
            agreement: method_agreement,
        });
    }
    let magnitude = coherence_magnitude(&x_ss);
    let ratio = match coherence_ratio(&x_ss) {
        Ok(r) => r,
        Err(Error::NoExcitedPopulation) => 0.0,
        Err(e) => return Err(e),
    };
    Ok(SteadyResult {
        x_ss,
        residual,
        method_agreement,
        horizon,
        generator_norm: a.matrix().norm_1(),
        coherence_magnitude: magnitude,
        coherence_ratio: ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::optical_generator;

    fn decay_only() -> GeneratorA {
        population_generator(&SystemParams::dimensionless(1.0, 0.0, 0.0)).unwrap()
    }

    #[test]
    fn zero_time_returns_input() {
        let x0 = PopulationState([0.1, 0.2, 0.7, 0.05, 0.01]);
        let a = population_generator(&SystemParams::dimensionless(3.0, 2.0, 5.0)).unwrap();
        assert_eq!(propagate(&a, &x0, 0.0).unwrap(), x0);
        assert_eq!(rk4_oracle(&a, &x0, 0.0, 1e-3).unwrap(), x0);
    }

    #[test]
    fn exponential_decay_closed_form() {
        let a = decay_only();
        let x0 = PopulationState([1.0, 0.0, 0.0, 0.0, 0.0]);
        let x = propagate(&a, &x0, 1.0).unwrap();
        let e = (-1.0f64).exp();
        assert!((x.0[0] - e).abs() < 1e-15);
        assert!((x.0[2] - (1.0 - e)).abs() < 1e-15);

        let y = rk4_oracle(&a, &x0, 1.0, 1e-3).unwrap();
        assert!((y.0[0] - e).abs() < 1e-10);
    }

    #[test]
    fn negative_time_rejected() {
        let a = decay_only();
        assert!(matches!(
            propagate(&a, &PopulationState::GROUND, -1.0),
            Err(Error::NegativeTime(_))
        ));
        let c = optical_generator(&SystemParams::dimensionless(1.0, 0.0, 0.0)).unwrap();
        assert!(propagate_optical(&c, &OpticalCoherenceState::ZERO, -0.5).is_err());
    }

    #[test]
    fn optical_pure_damping() {
        let c = optical_generator(&SystemParams::dimensionless(1.0, 0.0, 0.0)).unwrap();
        let z = propagate_optical(&c, &OpticalCoherenceState([1.0, 0.0, 0.0, 0.0]), 2.0).unwrap();
        assert!((z.0[0] - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(&z.0[1..], &[0.0, 0.0, 0.0]);
        let zero = propagate_optical(&c, &OpticalCoherenceState::ZERO, 3.0).unwrap();
        assert_eq!(zero, OpticalCoherenceState::ZERO);
    }

    #[test]
    fn rk4_rejects_large_step() {
        let a = population_generator(&SystemParams::dimensionless(1.0, 10.0, 0.06)).unwrap();
        let max = rk4_max_step(a.matrix());
        assert!(matches!(
            rk4_oracle(&a, &PopulationState::GROUND, 1.0, 2.0 * max),
            Err(Error::StepTooLarge { .. })
        ));
    }

    #[test]
    fn single_point_series() {
        let a = decay_only();
        let x0 = PopulationState([0.3, 0.3, 0.4, 0.1, 0.0]);
        let s = time_series(&a, None, &x0, None, &[0.0]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.states()[0], x0);
        assert!(s.optical().is_none());
    }

    #[test]
    fn empty_or_unsorted_grid_rejected() {
        let a = decay_only();
        assert!(matches!(
            time_series(&a, None, &PopulationState::GROUND, None, &[]),
            Err(Error::EmptyGrid)
        ));
        assert!(time_series(&a, None, &PopulationState::GROUND, None, &[0.0, 2.0, 1.0]).is_err());
    }

    #[test]
    fn uniform_and_nonuniform_paths_agree() {
        let params = SystemParams::dimensionless(10.0, 0.1, 100.0);
        let a = population_generator(&params).unwrap();
        let grid = uniform_grid(5.0, 101);
        let uniform = time_series(&a, None, &PopulationState::GROUND, None, &grid).unwrap();
        let mut perturbed = grid.clone();
        perturbed.push(5.0 + 1e-3);
        let nonuniform = time_series(&a, None, &PopulationState::GROUND, None, &perturbed).unwrap();
        assert!(nonuniform.uniform_step().is_none());
        for (u, v) in uniform.states().iter().zip(nonuniform.states()) {
            assert!(max_abs_diff(&u.0, &v.0) < 1e-10);
        }
    }

    #[test]
    fn optical_series_stays_zero_from_zero() {
        let params = SystemParams::dimensionless(1.0, 1.0, 2.0).with_optical_frequencies(30.0, 29.0);
        let (a, c) = crate::generators::build_generators(&params).unwrap();
        let s = time_series(&a, Some(&c), &PopulationState::GROUND, None, &uniform_grid(4.0, 50)).unwrap();
        assert!(s.optical().unwrap().iter().all(|z| *z == OpticalCoherenceState::ZERO));
    }

    #[test]
    fn steady_state_without_pump_is_ground() {
        let r = steady_state(&SystemParams::dimensionless(3.0, 0.5, 0.0)).unwrap();
        assert!(max_abs_diff(&r.x_ss.0, &PopulationState::GROUND.0) < 1e-15);
        assert_eq!(r.coherence_magnitude, 0.0);
        assert_eq!(r.coherence_ratio, 0.0);
    }

    #[test]
    fn dark_state_makes_kernel_degenerate() {
        // Parallel dipoles with degenerate levels: the antisymmetric excited
        // superposition neither decays nor is pumped.
        let params = SystemParams::dimensionless(1.0, 0.0, 1.0)
            .with_p(1.0)
            .with_field_mode(crate::model::FieldMode::Isotropic);
        assert!(matches!(steady_state(&params), Err(Error::DegenerateKernel { .. })));
    }

    #[test]
    fn horizon_covers_slow_level() {
        let params = SystemParams::dimensionless(10.0, 0.1, 0.06);
        let t = steady_horizon(&params).unwrap();
        assert!(t * params.gamma_b_iso >= 30.0 - 1e-9);
        assert!(steady_horizon(&SystemParams::dimensionless(1.0, 0.1, 0.06)).unwrap() == 100.0);
    }
}
