//! JSON run configuration and its resolution into simulation inputs.

use std::path::{Path, PathBuf};

use fano_core::analysis::classify_regime;
use fano_core::{mean_photon_number, FieldMode, RegimeLabel, SystemParams};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::preset::{preset, Preset};

/// Reduced Planck constant, J·s (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (CODATA 2018, exact).
pub const K_B: f64 = 1.380_649e-23;

pub const DEFAULT_T_MAX: f64 = 20.0;
pub const DEFAULT_SAMPLES: usize = 2048;
pub const DEFAULT_OUT: &str = "fano-sim-out";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Simulate,
    Steady,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// Rates and times are plain numbers.
    #[default]
    Dimensionless,
    /// Rates in rad/s, times in seconds.
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FieldModeName {
    Polarized,
    Isotropic,
}

impl From<FieldModeName> for FieldMode {
    fn from(m: FieldModeName) -> Self {
        match m {
            FieldModeName::Polarized => FieldMode::PolarizedAnisotropic,
            FieldModeName::Isotropic => FieldMode::Isotropic,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub gamma_a_iso: Option<f64>,
    pub gamma_b_iso: Option<f64>,
    pub p: Option<f64>,
    /// Excited-state splitting in rate units.
    pub delta: Option<f64>,
    /// Splitting relative to the mean decay rate; exclusive with `delta`.
    pub delta_over_gamma: Option<f64>,
    pub n_bar: Option<f64>,
    /// Field temperature; with `transition_frequency` replaces `n_bar`.
    pub temperature_k: Option<f64>,
    /// Mean transition angular frequency in rad/s.
    pub transition_frequency: Option<f64>,
    pub field_mode: Option<FieldModeName>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    pub t_max: Option<f64>,
    pub n_samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisScale {
    #[default]
    Log,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum AxisSpec {
    Values {
        values: Vec<f64>,
    },
    Range {
        min: f64,
        max: f64,
        count: usize,
        #[serde(default)]
        scale: AxisScale,
    },
}

impl AxisSpec {
    pub fn points(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let bad = |why: &str| CliError::Config(format!("sweep axis {name}: {why}"));
        let points = match self {
            AxisSpec::Values { values } => values.clone(),
            &AxisSpec::Range {
                min,
                max,
                count,
                scale,
            } => {
                if count == 0 {
                    return Err(bad("count must be positive"));
                }
                if !(min.is_finite() && max.is_finite()) || min > max {
                    return Err(bad("need finite min <= max"));
                }
                if count == 1 {
                    vec![min]
                } else {
                    let step = |i: usize| i as f64 / (count - 1) as f64;
                    match scale {
                        AxisScale::Linear => (0..count).map(|i| min + (max - min) * step(i)).collect(),
                        AxisScale::Log => {
                            if min <= 0.0 {
                                return Err(bad("log axis needs min > 0"));
                            }
                            let (a, b) = (min.ln(), max.ln());
                            let mut v: Vec<f64> =
                                (0..count).map(|i| (a + (b - a) * step(i)).exp()).collect();
                            // keep the end points exact
                            v[0] = min;
                            v[count - 1] = max;
                            v
                        }
                    }
                }
            }
        };
        if points.is_empty() {
            return Err(bad("no values"));
        }
        if points.iter().any(|v| !v.is_finite()) {
            return Err(bad("non-finite value"));
        }
        Ok(points)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub n_bar: Option<AxisSpec>,
    pub delta_over_gamma: Option<AxisSpec>,
}

/// The JSON document accepted by `--config`. Every field is optional so
/// that command-line flags can fill in or override any of them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub preset: Option<String>,
    pub units: Option<Units>,
    #[serde(default)]
    pub params: ParamsSpec,
    #[serde(default)]
    pub time: TimeSpec,
    #[serde(default)]
    pub sweep: SweepSpec,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// Model inputs after applying the preset, unit conversion and checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub preset: Option<Preset>,
    pub units: Units,
    /// Parameters in internal units (`γ̄ = 1` for SI input).
    pub params: SystemParams,
    /// Internal rate = config rate / `rate_scale`; internal time =
    /// config time · `rate_scale`.
    pub rate_scale: f64,
    pub regime: RegimeLabel,
    pub warnings: Vec<String>,
}

fn required(value: Option<f64>, name: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Config(format!("missing parameter {name}")))
}

/// Builds the model. `need_point` requires `n_bar` and the splitting; sweeps
/// take both from their axes instead.
pub fn resolve(cfg: &RunConfig, need_point: bool) -> Result<Resolved, CliError> {
    let preset = cfg.preset.as_deref().map(preset).transpose()?;
    let units = cfg
        .units
        .or(preset.as_ref().map(|p| p.units))
        .unwrap_or_default();
    let spec = &cfg.params;

    let gamma_a = required(spec.gamma_a_iso.or(preset.as_ref().map(|p| p.gamma_a_iso)), "gamma_a_iso")?;
    let gamma_b = required(spec.gamma_b_iso.or(preset.as_ref().map(|p| p.gamma_b_iso)), "gamma_b_iso")?;
    let p = spec.p.or(preset.as_ref().map(|p| p.p)).unwrap_or(0.0);
    let field_mode = spec
        .field_mode
        .map(FieldMode::from)
        .or(preset.as_ref().map(|p| p.field_mode))
        .unwrap_or_default();
    let gamma_bar = 0.5 * (gamma_a + gamma_b);

    let thermal = match (spec.temperature_k, spec.transition_frequency) {
        (Some(t), Some(w)) => {
            if !(t > 0.0 && w > 0.0) {
                return Err(CliError::Config(
                    "temperature_k and transition_frequency must be positive".into(),
                ));
            }
            Some(mean_photon_number(HBAR * w / (K_B * t)).map_err(CliError::from_core_config)?)
        }
        (None, None) => None,
        _ => {
            return Err(CliError::Config(
                "temperature_k and transition_frequency must be given together".into(),
            ))
        }
    };
    let n_bar = match (spec.n_bar, thermal) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config("give either n_bar or temperature_k, not both".into()))
        }
        (n, t) => n.or(t),
    };
    let delta = match (spec.delta, spec.delta_over_gamma) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config("give either delta or delta_over_gamma, not both".into()))
        }
        (Some(d), None) => Some(d),
        (None, r) => r.map(|r| r * gamma_bar),
    };
    let (n_bar, delta) = if need_point {
        (required(n_bar, "n_bar")?, required(delta, "delta or delta_over_gamma")?)
    } else {
        (n_bar.unwrap_or(0.0), delta.unwrap_or(0.0))
    };

    let raw = SystemParams {
        gamma_a_iso: gamma_a,
        gamma_b_iso: gamma_b,
        p,
        delta,
        n_bar,
        omega_ac: 0.0,
        omega_bc: 0.0,
        field_mode,
    };
    raw.validate().map_err(CliError::from_core_config)?;
    let rate_scale = match units {
        Units::Dimensionless => 1.0,
        Units::Si => gamma_bar,
    };
    let params = if rate_scale == 1.0 {
        raw
    } else {
        raw.scaled(1.0 / rate_scale)
    };

    let mut warnings = Vec::new();
    if need_point {
        if let Some(w) = preset.as_ref().and_then(|p| p.saturation_warning(n_bar)) {
            warnings.push(w);
        }
    }
    Ok(Resolved {
        regime: classify_regime(&params),
        preset,
        units,
        params,
        rate_scale,
        warnings,
    })
}
