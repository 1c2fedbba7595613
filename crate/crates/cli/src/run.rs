//! Execution of a resolved configuration.

use std::path::{Path, PathBuf};

use fano_core::analysis::sweep_steady_with_threads;
use fano_core::dynamics::uniform_grid;
use fano_core::generators::population_generator;
use fano_core::{steady_state, sweep_steady, time_series, PopulationState, SweepResult};

use crate::config::{
    resolve, AxisScale, AxisSpec, Mode, Resolved, RunConfig, Units, DEFAULT_OUT, DEFAULT_SAMPLES,
    DEFAULT_T_MAX,
};
use crate::csv::{self, Table};
use crate::error::CliError;
use crate::svg::{Heatmap, LinePlot, Scale, Series};

/// What a run produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
    /// One line per failed sweep cell.
    pub failures: Vec<String>,
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            2
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mode = cfg
        .mode
        .ok_or_else(|| CliError::Config("mode is not set".into()))?;
    let out_dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    match mode {
        Mode::Simulate => simulate(cfg, &out_dir),
        Mode::Steady => steady(cfg, &out_dir),
        Mode::Sweep => sweep(cfg, &out_dir),
    }
}

fn write(dir: &Path, name: &str, contents: &str, outcome: &mut Outcome) -> Result<(), CliError> {
    let io = |path: &Path, source| CliError::Output {
        path: path.display().to_string(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| io(&path, e))?;
    outcome.files.push(path);
    Ok(())
}

fn time_label(units: Units) -> &'static str {
    match units {
        Units::Dimensionless => "time",
        Units::Si => "time (s)",
    }
}

/// Line plot of a trajectory table (as written by [`csv::trajectory_csv`]).
pub fn trajectory_plot(table: &Table, units: Units) -> Result<LinePlot, CliError> {
    let column = |name: &str| {
        table
            .column(name)
            .ok_or_else(|| CliError::Config(format!("trajectory table lacks column {name}")))
    };
    let t = column("time")?;
    let series = [
        ("|rho_ab|", "#21918c", "coh_mag"),
        ("rho_aa", "#440154", "rho_aa"),
        ("rho_bb", "#e36414", "rho_bb"),
    ]
    .into_iter()
    .map(|(label, color, name)| {
        Ok(Series {
            label: label.into(),
            color: color.into(),
            points: t.iter().copied().zip(column(name)?).collect(),
        })
    })
    .collect::<Result<Vec<_>, CliError>>()?;
    Ok(LinePlot {
        title: "Excited-state populations and coherence".into(),
        x_label: time_label(units).into(),
        y_label: "density-matrix element".into(),
        x_scale: Scale::Linear,
        y_scale: Scale::Linear,
        series,
    })
}

fn describe(r: &Resolved) -> String {
    let p = &r.params;
    format!(
        "gamma_a = {}, gamma_b = {}, p = {}, delta/gamma = {}, n_bar = {}, regime {:?}/{:?}",
        p.gamma_a_iso * r.rate_scale,
        p.gamma_b_iso * r.rate_scale,
        p.p,
        p.delta_over_gamma(),
        p.n_bar,
        r.regime.damping,
        r.regime.pumping
    )
}

fn simulate(cfg: &RunConfig, dir: &Path) -> Result<Outcome, CliError> {
    let r = resolve(cfg, true)?;
    // default horizon is DEFAULT_T_MAX mean lifetimes, in config units
    let gamma_bar = r.params.gamma_bar() * r.rate_scale;
    let t_max = cfg.time.t_max.unwrap_or(DEFAULT_T_MAX / gamma_bar);
    let n = cfg.time.n_samples.unwrap_or(DEFAULT_SAMPLES);
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(CliError::Config("time.t_max must be positive".into()));
    }
    if n < 2 {
        return Err(CliError::Config("time.n_samples must be at least 2".into()));
    }
    let times = uniform_grid(t_max, n);
    let internal: Vec<f64> = times.iter().map(|t| t * r.rate_scale).collect();
    let a = population_generator(&r.params)?;
    let series = time_series(&a, None, &PopulationState::GROUND, None, &internal)?;
    series.validate_states(1e-9)?;

    let text = csv::trajectory_csv(&times, series.states());
    let plot = trajectory_plot(&csv::parse(&text)?, r.units)?;
    let mut outcome = Outcome {
        warnings: r.warnings.clone(),
        summary: vec![describe(&r)],
        ..Default::default()
    };
    write(dir, "trajectory.csv", &text, &mut outcome)?;
    write(dir, "trajectory.svg", &plot.render(), &mut outcome)?;
    Ok(outcome)
}

fn steady(cfg: &RunConfig, dir: &Path) -> Result<Outcome, CliError> {
    let r = resolve(cfg, true)?;
    let result = steady_state(&r.params)?;
    let mut outcome = Outcome {
        warnings: r.warnings.clone(),
        summary: vec![
            describe(&r),
            format!(
                "|rho_ab| = {:.6}, ratio = {:.6}, nullspace/propagation agreement {:.1e}",
                result.coherence_magnitude, result.coherence_ratio, result.method_agreement
            ),
        ],
        ..Default::default()
    };
    let text = csv::steady_csv(r.params.n_bar, r.params.delta_over_gamma(), &result);
    write(dir, "steady.csv", &text, &mut outcome)?;
    Ok(outcome)
}

fn default_axis(min: f64, max: f64) -> AxisSpec {
    AxisSpec::Range {
        min,
        max,
        count: 20,
        scale: AxisScale::Log,
    }
}

fn heatmap(s: &SweepResult, title: &str, values: &[Vec<f64>]) -> Heatmap {
    Heatmap {
        title: title.into(),
        x_label: "delta / gamma_bar".into(),
        y_label: "n_bar".into(),
        x_values: s.delta_over_gamma_axis.clone(),
        y_values: s.n_bar_axis.clone(),
        values: values.to_vec(),
    }
}

fn sweep(cfg: &RunConfig, dir: &Path) -> Result<Outcome, CliError> {
    let r = resolve(cfg, false)?;
    let n_axis = cfg
        .sweep
        .n_bar
        .clone()
        .unwrap_or_else(|| default_axis(0.01, 345.0))
        .points("n_bar")?;
    let d_axis = cfg
        .sweep
        .delta_over_gamma
        .clone()
        .unwrap_or_else(|| default_axis(0.01, 10.0))
        .points("delta_over_gamma")?;
    if n_axis.iter().any(|&n| n < 0.0) {
        return Err(CliError::Config("sweep axis n_bar: values must be non-negative".into()));
    }
    let result = match cfg.jobs {
        Some(0) => return Err(CliError::Config("jobs must be at least 1".into())),
        Some(j) => sweep_steady_with_threads(&r.params, &n_axis, &d_axis, j),
        None => sweep_steady(&r.params, &n_axis, &d_axis),
    }
    .map_err(CliError::from_core_config)?;

    let mut outcome = Outcome::default();
    let n_max = n_axis.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if let Some(w) = r.preset.as_ref().and_then(|p| p.saturation_warning(n_max)) {
        outcome.warnings.push(w);
    }
    outcome.failures = result
        .failures()
        .map(|(i, j, e)| {
            format!(
                "cell n_bar = {}, delta_over_gamma = {}: {e}",
                n_axis[i], d_axis[j]
            )
        })
        .collect();
    if let Some((i, j, max)) = SweepResult::argmax(&result.coherence_magnitude) {
        outcome.summary.push(format!(
            "max |rho_ab| = {max:.6} at n_bar = {}, delta/gamma = {}",
            n_axis[i], d_axis[j]
        ));
    }
    write(dir, "sweep.csv", &csv::sweep_csv(&result), &mut outcome)?;
    write(
        dir,
        "sweep_coh_mag.svg",
        &heatmap(&result, "steady |rho_ab|", &result.coherence_magnitude).render(),
        &mut outcome,
    )?;
    write(
        dir,
        "sweep_coh_ratio.svg",
        &heatmap(
            &result,
            "steady |rho_ab| / (rho_aa + rho_bb)",
            &result.coherence_ratio,
        )
        .render(),
        &mut outcome,
    )?;
    Ok(outcome)
}
