//! Named parameter sets.

use std::f64::consts::PI;

use fano_core::FieldMode;
use serde::Serialize;

use crate::config::Units;
use crate::error::CliError;

/// Mean photon number above which the rb87-d1 field exceeds the D1
/// saturation intensity.
pub const RB87_N_BAR_MAX: f64 = 345.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub units: Units,
    pub gamma_a_iso: f64,
    pub gamma_b_iso: f64,
    pub p: f64,
    #[serde(serialize_with = "mode_name")]
    pub field_mode: FieldMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_bar_max: Option<f64>,
}

fn mode_name<S: serde::Serializer>(m: &FieldMode, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match m {
        FieldMode::PolarizedAnisotropic => "polarized",
        FieldMode::Isotropic => "isotropic",
    })
}

impl Preset {
    pub fn saturation_warning(&self, n_bar: f64) -> Option<String> {
        let max = self.n_bar_max?;
        (n_bar > max).then(|| {
            format!(
                "warning: n_bar = {n_bar} exceeds {max} for preset {}; the field is beyond saturation intensity",
                self.name
            )
        })
    }
}

pub const PRESET_NAMES: [&str; 3] = ["rb87-d1", "symmetric-dimensionless", "asymmetric-10"];

pub fn preset(name: &str) -> Result<Preset, CliError> {
    let p = match name {
        "rb87-d1" => Preset {
            name: "rb87-d1",
            description: "Rb-87 D1 line, hyperfine-split excited levels, polarized driving",
            units: Units::Si,
            gamma_a_iso: 2.0 * PI * 5.75e6,
            gamma_b_iso: 2.0 * PI * 5.75e6,
            p: 0.0,
            field_mode: FieldMode::PolarizedAnisotropic,
            n_bar_max: Some(RB87_N_BAR_MAX),
        },
        "symmetric-dimensionless" => Preset {
            name: "symmetric-dimensionless",
            description: "equal unit decay rates",
            units: Units::Dimensionless,
            gamma_a_iso: 1.0,
            gamma_b_iso: 1.0,
            p: 0.0,
            field_mode: FieldMode::PolarizedAnisotropic,
            n_bar_max: None,
        },
        "asymmetric-10" => Preset {
            name: "asymmetric-10",
            description: "upper level decays ten times faster",
            units: Units::Dimensionless,
            gamma_a_iso: 10.0,
            gamma_b_iso: 1.0,
            p: 0.0,
            field_mode: FieldMode::PolarizedAnisotropic,
            n_bar_max: None,
        },
        other => return Err(CliError::UnknownPreset(other.to_string())),
    };
    Ok(p)
}
