use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::dynamics::TimeSeries;
use crate::error::{Error, Result};

/// Minimum number of samples for spectral peak detection.
pub const MIN_SPECTRAL_SAMPLES: usize = 256;

/// A spectral peak must exceed this multiple of the median bin power.
const PEAK_TO_MEDIAN: f64 = 10.0;

/// Zero-padding factor applied before the FFT.
const PADDING: usize = 4;

/// Angular frequency of the oscillation in `Re ρ_ab`, or `None` when no
/// spectral line stands out.
///
/// The signal is detrended by its final (stationary) value.
pub fn oscillation_frequency(series: &TimeSeries) -> Result<Option<f64>> {
    let values: Vec<f64> = series.states().iter().map(|x| x.0[3]).collect();
    dominant_frequency(series.times(), &values)
}

/// Angular frequency of the strongest spectral line of `values` sampled on a
/// uniform grid: the signal minus its last sample is Hann-windowed,
/// zero-padded, transformed, and the peak bin refined by a three-point
/// parabola. Frequencies inside the window's zero-frequency main lobe
/// (below `4π/T` for a record of length `T`) are not resolved.
pub fn dominant_frequency(times: &[f64], values: &[f64]) -> Result<Option<f64>> {
    if times.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: times.len(),
            got: values.len(),
        });
    }
    let n = times.len();
    if n < MIN_SPECTRAL_SAMPLES {
        return Err(Error::InvalidGrid(format!(
            "need at least {MIN_SPECTRAL_SAMPLES} samples, got {n}"
        )));
    }
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    if !(dt > 0.0)
        || times
            .windows(2)
            .any(|w| ((w[1] - w[0]) - dt).abs() > 1e-9 * dt)
    {
        return Err(Error::NonUniformGrid);
    }

    let baseline = values[n - 1];
    let len = (PADDING * n).next_power_of_two();
    let mut buffer: Vec<Complex<f64>> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = 0.5 * (1.0 - (2.0 * PI * i as f64 / (n - 1) as f64).cos());
            Complex::new((v - baseline) * w, 0.0)
        })
        .collect();
    buffer.resize(len, Complex::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(len).process(&mut buffer);

    let power: Vec<f64> = buffer[..=len / 2].iter().map(|c| c.norm_sqr()).collect();
    // bins inside the Hann main lobe around zero frequency carry the offset
    let first_bin = (2 * len).div_ceil(n) + 1;
    let (peak, peak_power) = power
        .iter()
        .enumerate()
        .skip(first_bin)
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, &p)| (k, p))
        .expect("spectrum has more than one bin");
    let mut sorted: Vec<f64> = power[first_bin..].to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    if !(peak_power > 0.0) || peak_power < PEAK_TO_MEDIAN * median {
        return Ok(None);
    }

    let offset = if peak + 1 < power.len() {
        let (l, c, r) = (power[peak - 1], power[peak], power[peak + 1]);
        let denom = l - 2.0 * c + r;
        if denom != 0.0 {
            0.5 * (l - r) / denom
        } else {
            0.0
        }
    } else {
        0.0
    };
    let bin = peak as f64 + offset;
    Ok(Some(2.0 * PI * bin / (len as f64 * dt)))
}

/// Earliest time after which `values` stays within `epsilon` of its final
/// value, linearly interpolated between samples.
///
/// Fails with `NotConverged` when the last 10% of samples still spread by
/// `epsilon/10` or more.
pub fn settling_time(times: &[f64], values: &[f64], epsilon: f64) -> Result<f64> {
    if times.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: times.len(),
            got: values.len(),
        });
    }
    if times.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            reason: "must be positive".into(),
        });
    }
    let n = values.len();
    let tail = &values[n - (n / 10).max(1)..];
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let limit = epsilon / 10.0;
    if hi - lo >= limit {
        return Err(Error::NotConverged {
            variation: hi - lo,
            limit,
        });
    }
    let last = values[n - 1];
    let Some(i) = values.iter().rposition(|v| (v - last).abs() > epsilon) else {
        return Ok(times[0]);
    };
    let g0 = (values[i] - last).abs();
    let g1 = (values[i + 1] - last).abs();
    let frac = if g0 > g1 { (g0 - epsilon) / (g0 - g1) } else { 1.0 };
    Ok(times[i] + frac.clamp(0.0, 1.0) * (times[i + 1] - times[i]))
}

/// Settling time of `|ρ_ab|(t)` with tolerance `epsilon`.
pub fn coherence_lifetime(series: &TimeSeries, epsilon: f64) -> Result<f64> {
    settling_time(series.times(), &series.coherence_magnitudes(), epsilon)
}

/// Number of direction reversals of `values`, ignoring excursions not larger
/// than `resolution`.
///
/// With `resolution = 0` every strict change of sign of the forward
/// difference counts; flat stretches are ignored.
pub fn direction_reversals(values: &[f64], resolution: f64) -> usize {
    let Some(&first) = values.first() else {
        return 0;
    };
    let mut direction = 0i8;
    let mut extreme = first;
    let mut reversals = 0;
    for &v in &values[1..] {
        match direction {
            0 => {
                if v - first > resolution {
                    direction = 1;
                    extreme = v;
                } else if first - v > resolution {
                    direction = -1;
                    extreme = v;
                }
            }
            1 => {
                if v > extreme {
                    extreme = v;
                } else if extreme - v > resolution {
                    reversals += 1;
                    direction = -1;
                    extreme = v;
                }
            }
            _ => {
                if v < extreme {
                    extreme = v;
                } else if v - extreme > resolution {
                    reversals += 1;
                    direction = 1;
                    extreme = v;
                }
            }
        }
    }
    reversals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::uniform_grid;
    use crate::model::PopulationState;

    fn series_from(times: &[f64], values: &[f64]) -> TimeSeries {
        let states = values
            .iter()
            .map(|&v| PopulationState([0.5, 0.5, 0.0, 0.5 * v, 0.0]))
            .collect();
        TimeSeries::new(times.to_vec(), states, None).unwrap()
    }

    #[test]
    fn constant_series_has_no_line() {
        let t = uniform_grid(20.0, 512);
        let v = vec![0.3; 512];
        assert_eq!(dominant_frequency(&t, &v).unwrap(), None);
        assert_eq!(oscillation_frequency(&series_from(&t, &v)).unwrap(), None);
    }

    #[test]
    fn damped_cosine_frequency() {
        let t = uniform_grid(20.0, 2048);
        let v: Vec<f64> = t.iter().map(|&t| (-t).exp() * (7.0 * t).cos()).collect();
        let w = oscillation_frequency(&series_from(&t, &v)).unwrap().unwrap();
        assert!((w - 7.0).abs() < 0.02 * 7.0, "{w}");
    }

    #[test]
    fn undamped_sine_frequency_is_sharp() {
        let t = uniform_grid(50.0, 4096);
        let v: Vec<f64> = t.iter().map(|&t| (3.3 * t).sin()).collect();
        let w = dominant_frequency(&t, &v).unwrap().unwrap();
        assert!((w - 3.3).abs() < 5e-3, "{w}");
    }

    #[test]
    fn spectral_input_checks() {
        let t = uniform_grid(1.0, 100);
        assert!(dominant_frequency(&t, &vec![0.0; 100]).is_err());
        let mut t = uniform_grid(10.0, 300);
        t[150] += 1e-3;
        assert!(matches!(
            dominant_frequency(&t, &vec![0.0; 300]),
            Err(Error::NonUniformGrid)
        ));
    }

    #[test]
    fn settling_of_exponential_approach() {
        let t = uniform_grid(30.0, 3001);
        let v: Vec<f64> = t.iter().map(|&t| 1.0 - (-t).exp()).collect();
        let gap = v[v.len() - 1] - v[0];
        let s = settling_time(&t, &v, (-3.0f64).exp() * gap).unwrap();
        assert!((s - 3.0).abs() < 1e-4, "{s}");
        let s = coherence_lifetime(&series_from(&t, &v), 0.5 * (-3.0f64).exp() * gap).unwrap();
        assert!((s - 3.0).abs() < 1e-4, "{s}");
    }

    #[test]
    fn stationary_series_settles_immediately() {
        let t = uniform_grid(5.0, 50);
        assert_eq!(settling_time(&t, &vec![0.2; 50], 1e-6).unwrap(), 0.0);
    }

    #[test]
    fn unsettled_tail_is_reported() {
        let t = uniform_grid(2.0, 200);
        let v: Vec<f64> = t.iter().map(|&t| (-t).exp()).collect();
        assert!(matches!(
            settling_time(&t, &v, 1e-3),
            Err(Error::NotConverged { .. })
        ));
    }

    #[test]
    fn reversal_counting() {
        assert_eq!(direction_reversals(&[0.0, 1.0, 2.0, 3.0], 0.0), 0);
        assert_eq!(direction_reversals(&[0.0, 1.0, 1.0, 1.0], 0.0), 0);
        assert_eq!(direction_reversals(&[0.0, 2.0, 1.0, 3.0], 0.0), 2);
        assert_eq!(direction_reversals(&[0.0, 2.0, 1.9, 3.0], 0.5), 0);
        assert_eq!(direction_reversals(&[3.0, 2.0, 1.0, 1.5], 0.0), 1);
        assert_eq!(direction_reversals(&[], 0.0), 0);
    }
}
