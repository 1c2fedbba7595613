//! CSV emission and parsing. Floats are written with 17 significant digits
//! so that parsing recovers them exactly.

use fano_core::{PopulationState, SteadyResult, SweepResult};

use crate::error::CliError;

pub const TRAJECTORY_HEADER: &str = "time,rho_aa,rho_bb,rho_cc,re_rho_ab,im_rho_ab,coh_mag";
pub const STEADY_HEADER: &str =
    "n_bar,delta_over_gamma,rho_aa,rho_bb,rho_cc,re_rho_ab,im_rho_ab,coh_mag,coh_ratio,method_agreement";
pub const SWEEP_HEADER: &str = "n_bar,delta_over_gamma,coh_mag,coh_ratio,rho_aa,rho_bb,valid";

pub fn number(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn push_row(out: &mut String, values: impl IntoIterator<Item = f64>) {
    let row: Vec<String> = values.into_iter().map(number).collect();
    out.push_str(&row.join(","));
    out.push('\n');
}

pub fn trajectory_csv(times: &[f64], states: &[PopulationState]) -> String {
    let mut out = format!("{TRAJECTORY_HEADER}\n");
    for (t, x) in times.iter().zip(states) {
        let [aa, bb, cc, re, im] = x.0;
        push_row(&mut out, [*t, aa, bb, cc, re, im, re.hypot(im)]);
    }
    out
}

pub fn steady_csv(n_bar: f64, delta_over_gamma: f64, r: &SteadyResult) -> String {
    let mut out = format!("{STEADY_HEADER}\n");
    let [aa, bb, cc, re, im] = r.x_ss.0;
    push_row(
        &mut out,
        [
            n_bar,
            delta_over_gamma,
            aa,
            bb,
            cc,
            re,
            im,
            r.coherence_magnitude,
            r.coherence_ratio,
            r.method_agreement,
        ],
    );
    out
}

/// One row per cell, `n_bar` varying slowest. Failed cells have `NaN`
/// metrics and `valid = 0`.
pub fn sweep_csv(s: &SweepResult) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for (i, &n) in s.n_bar_axis.iter().enumerate() {
        for (j, &d) in s.delta_over_gamma_axis.iter().enumerate() {
            push_row(
                &mut out,
                [
                    n,
                    d,
                    s.coherence_magnitude[i][j],
                    s.coherence_ratio[i][j],
                    s.population_a[i][j],
                    s.population_b[i][j],
                    if s.valid[i][j] { 1.0 } else { 0.0 },
                ],
            );
        }
    }
    out
}

/// A parsed numeric CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

pub fn parse(text: &str) -> Result<Table, CliError> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| CliError::Config("empty CSV".into()))?
        .split(',')
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|f| f.parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| CliError::Config(format!("CSV line {}: {e}", k + 2)))?;
        if row.len() != header.len() {
            return Err(CliError::Config(format!(
                "CSV line {}: expected {} fields, got {}",
                k + 2,
                header.len(),
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok(Table { header, rows })
}
