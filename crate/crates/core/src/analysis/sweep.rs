use rayon::prelude::*;

use crate::dynamics::{steady_state, SteadyResult};
use crate::error::{Error, Result};
use crate::model::SystemParams;

/// One grid point of a steady-state sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub n_bar: f64,
    pub delta_over_gamma: f64,
    pub outcome: std::result::Result<SteadyResult, Error>,
}

/// Steady-state metrics over an `(n̄, Δ/γ̄)` grid.
///
/// 2-D arrays are indexed `[i][j]` with `i` along `n_bar_axis` and `j` along
/// `delta_over_gamma_axis`. Failed cells hold `NaN` and `valid[i][j] = false`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub n_bar_axis: Vec<f64>,
    pub delta_over_gamma_axis: Vec<f64>,
    pub coherence_magnitude: Vec<Vec<f64>>,
    pub coherence_ratio: Vec<Vec<f64>>,
    pub population_a: Vec<Vec<f64>>,
    pub population_b: Vec<Vec<f64>>,
    pub valid: Vec<Vec<bool>>,
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    pub fn cell(&self, i: usize, j: usize) -> &SweepCell {
        &self.cells[i * self.delta_over_gamma_axis.len() + j]
    }

    pub fn failures(&self) -> impl Iterator<Item = (usize, usize, &Error)> {
        let cols = self.delta_over_gamma_axis.len();
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(k, c)| c.outcome.as_ref().err().map(|e| (k / cols, k % cols, e)))
    }

    pub fn all_valid(&self) -> bool {
        self.valid.iter().flatten().all(|&v| v)
    }

    /// Largest finite value of a metric grid with its `(i, j)` position.
    pub fn argmax(grid: &[Vec<f64>]) -> Option<(usize, usize, f64)> {
        grid.iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v)))
            .filter(|(_, _, v)| v.is_finite())
            .max_by(|a, b| a.2.total_cmp(&b.2))
    }
}

fn check_axis(name: &'static str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::InvalidParameter {
            name,
            reason: "axis is empty".into(),
        });
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(name));
    }
    Ok(())
}

/// Steady state at every `(n̄, Δ/γ̄)` pair, with the remaining parameters taken
/// from `template`. `Δ` is set to `(Δ/γ̄)·γ̄` of the template.
pub fn sweep_steady(
    template: &SystemParams,
    n_bar_axis: &[f64],
    delta_over_gamma_axis: &[f64],
) -> Result<SweepResult> {
    check_axis("n_bar_axis", n_bar_axis)?;
    check_axis("delta_over_gamma_axis", delta_over_gamma_axis)?;
    let cols = delta_over_gamma_axis.len();
    let gamma_bar = template.gamma_bar();
    let cells: Vec<SweepCell> = (0..n_bar_axis.len() * cols)
        .into_par_iter()
        .map(|k| {
            let n_bar = n_bar_axis[k / cols];
            let delta_over_gamma = delta_over_gamma_axis[k % cols];
            let params = SystemParams {
                n_bar,
                delta: delta_over_gamma * gamma_bar,
                ..*template
            };
            SweepCell {
                n_bar,
                delta_over_gamma,
                outcome: steady_state(&params),
            }
        })
        .collect();
    Ok(assemble(n_bar_axis, delta_over_gamma_axis, cells))
}

/// [`sweep_steady`] on a dedicated pool of `threads` workers.
pub fn sweep_steady_with_threads(
    template: &SystemParams,
    n_bar_axis: &[f64],
    delta_over_gamma_axis: &[f64],
    threads: usize,
) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter {
            name: "threads",
            reason: e.to_string(),
        })?;
    pool.install(|| sweep_steady(template, n_bar_axis, delta_over_gamma_axis))
}

fn assemble(n_bar_axis: &[f64], delta_axis: &[f64], cells: Vec<SweepCell>) -> SweepResult {
    let rows = n_bar_axis.len();
    let cols = delta_axis.len();
    let grid = |f: &dyn Fn(&SteadyResult) -> f64| -> Vec<Vec<f64>> {
        (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| cells[i * cols + j].outcome.as_ref().map_or(f64::NAN, f))
                    .collect()
            })
            .collect()
    };
    SweepResult {
        coherence_magnitude: grid(&|r| r.coherence_magnitude),
        coherence_ratio: grid(&|r| r.coherence_ratio),
        population_a: grid(&|r| r.x_ss.rho_aa()),
        population_b: grid(&|r| r.x_ss.rho_bb()),
        valid: (0..rows)
            .map(|i| (0..cols).map(|j| cells[i * cols + j].outcome.is_ok()).collect())
            .collect(),
        n_bar_axis: n_bar_axis.to_vec(),
        delta_over_gamma_axis: delta_axis.to_vec(),
        cells,
    }
}
