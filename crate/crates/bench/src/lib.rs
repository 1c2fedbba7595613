//! Shared workloads for the criterion benchmarks.

use fano_core::SystemParams;

/// The six reference parameter sets: symmetric and γ_a = 10 γ_b, each in the
/// underdamped weak-pump, overdamped weak-pump and overdamped strong-pump
/// regimes.
pub fn reference_sets() -> Vec<(&'static str, SystemParams)> {
    [
        ("sym-under-weak", 1.0, 10.0, 0.06),
        ("sym-over-weak", 1.0, 0.1, 0.06),
        ("sym-over-strong", 1.0, 0.1, 100.0),
        ("asym-under-weak", 10.0, 10.0, 0.06),
        ("asym-over-weak", 10.0, 0.1, 0.06),
        ("asym-over-strong", 10.0, 0.1, 100.0),
    ]
    .into_iter()
    .map(|(name, r, d, n)| (name, SystemParams::dimensionless(r, d, n)))
    .collect()
}

pub fn log_axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1).max(1) as f64).exp())
        .collect()
}
