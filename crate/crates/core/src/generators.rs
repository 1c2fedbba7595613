//! The real generators `A` (5×5) and `C` (4×4) of the two decoupled linear
//! subsystems `dx/dt = A x` and `dz/dt = C z`.
//!
//! Index convention: documentation and [`GeneratorA::element`] /
//! [`GeneratorC::element`] use 1-based `(row, column)` labels, matching the
//! usual element list `A_11 … A_55`. Storage is 0-based, so `A_ij` lives at
//! `matrix()[(i - 1, j - 1)]`. Row/column order follows
//! [`PopulationState`](crate::model::PopulationState) and
//! [`OpticalCoherenceState`](crate::model::OpticalCoherenceState).
//!
//! Writing `K = cross_pump + cross_decay` for the total interference coupling,
//! `r_l = n̄ γ_l^pol` for the pump rates and
//! `Γ = (r_a + r_b)/2 + (γ_a + γ_b)/2` for the excited-coherence damping:
//!
//! ```text
//! A_11 = −A_31 = −(r_a + γ_a)        A_22 = −A_32 = −(r_b + γ_b)
//! A_13 = r_a    A_23 = r_b           A_33 = −(r_a + r_b)
//! A_14 = A_24 = −K                   A_34 = 2K
//! A_41 = A_42 = −K/2                 A_43 = cross_pump
//! A_44 = A_55 = −Γ                   A_45 = −A_54 = Δ
//!
//! C_11 = C_22 = −(r_a + r_b/2 + γ_a/2)
//! C_33 = C_44 = −(r_b + r_a/2 + γ_b/2)
//! C_13 = C_31 = C_24 = C_42 = −K/2
//! C_12 = −C_21 = ω_ac                C_43 = −C_34 = ω_bc
//! ```
//!
//! All other entries are zero.

use crate::error::Result;
use crate::linalg::DenseMatrix;
use crate::model::{DerivedRates, SystemParams};

/// Generator of the population / excited-coherence subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorA(DenseMatrix);

/// Generator of the one-photon coherence subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorC(DenseMatrix);

impl GeneratorA {
    pub const DIM: usize = 5;

    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }

    /// 1-based element access, `A_ij`.
    pub fn element(&self, row: usize, col: usize) -> f64 {
        self.0[(row - 1, col - 1)]
    }

    /// Column sums over the three population rows; zero for a trace-preserving generator.
    pub fn trace_defect(&self) -> [f64; 5] {
        let v = self.0.vecmat(&[1.0, 1.0, 1.0, 0.0, 0.0]);
        [v[0], v[1], v[2], v[3], v[4]]
    }

    /// Generator for the same dynamics observed on a time axis scaled by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self(self.0.scale(k))
    }
}

impl GeneratorC {
    pub const DIM: usize = 4;

    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }

    /// 1-based element access, `C_ij`.
    pub fn element(&self, row: usize, col: usize) -> f64 {
        self.0[(row - 1, col - 1)]
    }
}

pub fn build_population_generator(params: &SystemParams, rates: &DerivedRates) -> GeneratorA {
    let r_a = rates.r_a_pol;
    let r_b = rates.r_b_pol;
    let k = rates.cross_total();
    let damping = 0.5 * (r_a + r_b) + 0.5 * (params.gamma_a_iso + params.gamma_b_iso);

    let mut a = DenseMatrix::zeros(5);
    let mut set = |row: usize, col: usize, v: f64| a[(row - 1, col - 1)] = v;

    set(1, 1, -(r_a + params.gamma_a_iso));
    set(3, 1, r_a + params.gamma_a_iso);
    set(2, 2, -(r_b + params.gamma_b_iso));
    set(3, 2, r_b + params.gamma_b_iso);

    set(1, 3, r_a);
    set(2, 3, r_b);
    set(3, 3, -(r_a + r_b));

    set(1, 4, -k);
    set(2, 4, -k);
    set(3, 4, 2.0 * k);
    set(4, 1, -0.5 * k);
    set(4, 2, -0.5 * k);
    set(4, 3, rates.cross_pump);

    set(4, 4, -damping);
    set(5, 5, -damping);
    set(4, 5, params.delta);
    set(5, 4, -params.delta);

    GeneratorA(a)
}

pub fn build_optical_generator(params: &SystemParams, rates: &DerivedRates) -> GeneratorC {
    let r_a = rates.r_a_pol;
    let r_b = rates.r_b_pol;
    let half_k = 0.5 * rates.cross_total();
    let damping_a = r_a + 0.5 * r_b + 0.5 * params.gamma_a_iso;
    let damping_b = r_b + 0.5 * r_a + 0.5 * params.gamma_b_iso;

    let mut c = DenseMatrix::zeros(4);
    let mut set = |row: usize, col: usize, v: f64| c[(row - 1, col - 1)] = v;

    set(1, 1, -damping_a);
    set(2, 2, -damping_a);
    set(3, 3, -damping_b);
    set(4, 4, -damping_b);

    set(1, 2, params.omega_ac);
    set(2, 1, -params.omega_ac);
    set(4, 3, params.omega_bc);
    set(3, 4, -params.omega_bc);

    set(1, 3, -half_k);
    set(3, 1, -half_k);
    set(2, 4, -half_k);
    set(4, 2, -half_k);

    GeneratorC(c)
}

/// Derives the rates and builds both generators.
pub fn build_generators(params: &SystemParams) -> Result<(GeneratorA, GeneratorC)> {
    let rates = crate::model::derive_rates(params)?;
    Ok((
        build_population_generator(params, &rates),
        build_optical_generator(params, &rates),
    ))
}

/// Builds the population generator, deriving the rates first.
pub fn population_generator(params: &SystemParams) -> Result<GeneratorA> {
    let rates = crate::model::derive_rates(params)?;
    Ok(build_population_generator(params, &rates))
}

/// Builds the optical-coherence generator, deriving the rates first.
pub fn optical_generator(params: &SystemParams) -> Result<GeneratorC> {
    let rates = crate::model::derive_rates(params)?;
    Ok(build_optical_generator(params, &rates))
}
