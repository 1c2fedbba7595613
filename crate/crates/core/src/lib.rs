//! Bloch-Redfield dynamics of a V-type three-level system driven by polarized
//! or isotropic incoherent radiation.
//!
//! The reduced density matrix splits into two decoupled real linear systems:
//! populations plus the excited-state (Fano) coherence, `dx/dt = A x`, and the
//! one-photon coherences, `dz/dt = C z`. Both are propagated exactly with a
//! scaling-and-squaring matrix exponential; an RK4 integrator serves as an
//! independent check. The [`analysis`] module builds steady-state sweeps over
//! pump strength and excited-state splitting.
//!
//! ```
//! use fano_core::{steady_state, SystemParams};
//!
//! // symmetric V-system, Δ/γ̄ = 0.1, n̄ = 100
//! let params = SystemParams::dimensionless(1.0, 0.1, 100.0);
//! let steady = steady_state(&params).unwrap();
//! assert!(steady.coherence_magnitude > 0.2 && steady.coherence_magnitude <= 0.25);
//! ```

// `!(x > 0.0)` is used deliberately so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod model;

pub use analysis::{
    classify_regime, coherence_lifetime, coherence_magnitude, coherence_ratio,
    oscillation_frequency, positivity_report, sweep_steady, DampingRegime, PositivityReport,
    PumpingRegime, RegimeLabel, SweepCell, SweepResult,
};
pub use dynamics::{
    propagate, propagate_optical, rk4_oracle, steady_state, time_series, SteadyResult, TimeSeries,
};
pub use error::{Error, Result};
pub use generators::{
    build_optical_generator, build_population_generator, GeneratorA, GeneratorC,
};
pub use linalg::{hermitian3_eigenvalues, matrix_exponential, steady_nullspace, DenseMatrix};
pub use model::{
    density_from_state, derive_rates, mean_photon_number, DensityMatrix3, DerivedRates,
    FieldMode, OpticalCoherenceState, PopulationState, SystemParams,
};
