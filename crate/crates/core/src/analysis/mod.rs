//! Coherence metrics, regime labels, signal diagnostics and steady-state sweeps.

mod signal;
mod sweep;

pub use signal::{
    coherence_lifetime, direction_reversals, dominant_frequency, oscillation_frequency,
    settling_time, MIN_SPECTRAL_SAMPLES,
};
pub use sweep::{sweep_steady, sweep_steady_with_threads, SweepCell, SweepResult};

use crate::dynamics::TimeSeries;
use crate::error::{Error, Result};
use crate::linalg::hermitian3_eigenvalues;
use crate::model::{density_from_state, OpticalCoherenceState, PopulationState, SystemParams};

/// `|ρ_ab|`.
pub fn coherence_magnitude(x: &PopulationState) -> f64 {
    x.0[3].hypot(x.0[4])
}

/// `|ρ_ab| / (ρ_aa + ρ_bb)`, at most 1/2 for a positive state.
pub fn coherence_ratio(x: &PopulationState) -> Result<f64> {
    let excited = x.0[0] + x.0[1];
    if excited <= 1e-15 {
        return Err(Error::NoExcitedPopulation);
    }
    Ok(coherence_magnitude(x) / excited)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DampingRegime {
    Underdamped,
    Overdamped,
    Crossover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PumpingRegime {
    Weak,
    Strong,
    Intermediate,
}

/// Descriptive label only; nothing in the simulation branches on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegimeLabel {
    pub damping: DampingRegime,
    pub pumping: PumpingRegime,
}

pub const UNDERDAMPED_MIN_DELTA: f64 = 5.0;
pub const OVERDAMPED_MAX_DELTA: f64 = 0.2;
pub const WEAK_PUMP_MAX_NBAR: f64 = 0.2;
pub const STRONG_PUMP_MIN_NBAR: f64 = 5.0;

pub fn classify_regime(params: &SystemParams) -> RegimeLabel {
    let ratio = params.delta_over_gamma().abs();
    let damping = if ratio >= UNDERDAMPED_MIN_DELTA {
        DampingRegime::Underdamped
    } else if ratio <= OVERDAMPED_MAX_DELTA {
        DampingRegime::Overdamped
    } else {
        DampingRegime::Crossover
    };
    let pumping = if params.n_bar <= WEAK_PUMP_MAX_NBAR {
        PumpingRegime::Weak
    } else if params.n_bar >= STRONG_PUMP_MIN_NBAR {
        PumpingRegime::Strong
    } else {
        PumpingRegime::Intermediate
    };
    RegimeLabel { damping, pumping }
}

/// Smallest density-matrix eigenvalue along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityReport {
    pub min_eigenvalue: f64,
    pub index: usize,
    pub time: f64,
    pub tolerance: f64,
    /// Set when `min_eigenvalue < −tolerance`.
    pub violated: bool,
}

pub fn positivity_report(series: &TimeSeries, tol: f64) -> Result<PositivityReport> {
    let optical = series.optical();
    let mut worst = (f64::INFINITY, 0usize);
    for (i, x) in series.states().iter().enumerate() {
        let z = optical.map_or(OpticalCoherenceState::ZERO, |z| z[i]);
        let rho = density_from_state(x, &z)?;
        let min = hermitian3_eigenvalues(&rho)?[0];
        if min < worst.0 {
            worst = (min, i);
        }
    }
    Ok(PositivityReport {
        min_eigenvalue: worst.0,
        index: worst.1,
        time: series.times()[worst.1],
        tolerance: tol,
        violated: worst.0 < -tol,
    })
}
