//! Physical parameters, derived rates and state vectors.
//!
//! The population subsystem is carried as the real 5-vector
//! `(ρ_aa, ρ_bb, ρ_cc, Re ρ_ab, Im ρ_ab)` and the optical subsystem as
//! `(Re ρ_ac, Im ρ_ac, Re ρ_bc, Im ρ_bc)`. Levels `|a⟩` and `|b⟩` are the two
//! excited states, `|c⟩` the common ground state.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Ratio between the polarized-channel coupling and the isotropic
/// spontaneous decay rate of the same transition.
pub const POLARIZED_TO_ISOTROPIC: f64 = 3.0 / (16.0 * PI);

/// Tolerance used by the state-vector invariant checks.
pub const STATE_TOLERANCE: f64 = 1e-10;

/// How the incoherent field couples to the two transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldMode {
    /// Directional, linearly polarized hot reservoir plus an isotropic vacuum.
    #[default]
    PolarizedAnisotropic,
    /// Isotropic, unpolarized thermal radiation.
    Isotropic,
}

/// Physical inputs. Rates and frequencies share one angular-frequency unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub gamma_a_iso: f64,
    pub gamma_b_iso: f64,
    /// Dipole alignment `cos Θ`.
    pub p: f64,
    /// Excited-state splitting `ω_ac − ω_bc`.
    pub delta: f64,
    pub n_bar: f64,
    /// Only enters the optical-coherence generator. Zero means "not given".
    pub omega_ac: f64,
    /// Only enters the optical-coherence generator. Zero means "not given".
    pub omega_bc: f64,
    pub field_mode: FieldMode,
}

impl SystemParams {
    /// Parameters in units where the mean spontaneous rate `γ̄` is one.
    ///
    /// `gamma_ratio` is `γ_a/γ_b`; the splitting is given as `Δ/γ̄`.
    pub fn dimensionless(gamma_ratio: f64, delta_over_gamma: f64, n_bar: f64) -> Self {
        let gamma_b = 2.0 / (1.0 + gamma_ratio);
        Self {
            gamma_a_iso: gamma_ratio * gamma_b,
            gamma_b_iso: gamma_b,
            p: 0.0,
            delta: delta_over_gamma,
            n_bar,
            omega_ac: 0.0,
            omega_bc: 0.0,
            field_mode: FieldMode::PolarizedAnisotropic,
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_field_mode(mut self, mode: FieldMode) -> Self {
        self.field_mode = mode;
        self
    }

    pub fn with_optical_frequencies(mut self, omega_ac: f64, omega_bc: f64) -> Self {
        self.omega_ac = omega_ac;
        self.omega_bc = omega_bc;
        self
    }

    /// `γ̄ = (γ_a + γ_b)/2`.
    pub fn gamma_bar(&self) -> f64 {
        0.5 * (self.gamma_a_iso + self.gamma_b_iso)
    }

    pub fn delta_over_gamma(&self) -> f64 {
        self.delta / self.gamma_bar()
    }

    /// Multiplies every rate and frequency by `k`, leaving `p` and `n̄` alone.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            gamma_a_iso: self.gamma_a_iso * k,
            gamma_b_iso: self.gamma_b_iso * k,
            delta: self.delta * k,
            omega_ac: self.omega_ac * k,
            omega_bc: self.omega_bc * k,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.gamma_a_iso,
            self.gamma_b_iso,
            self.p,
            self.delta,
            self.n_bar,
            self.omega_ac,
            self.omega_bc,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::NonFinite("system parameters"));
        }
        if self.gamma_a_iso <= 0.0 {
            return Err(invalid("gamma_a_iso", "must be positive"));
        }
        if self.gamma_b_iso <= 0.0 {
            return Err(invalid("gamma_b_iso", "must be positive"));
        }
        if !(-1.0..=1.0).contains(&self.p) {
            return Err(invalid("p", "must lie in [-1, 1]"));
        }
        if self.n_bar < 0.0 {
            return Err(invalid("n_bar", "must be non-negative"));
        }
        if self.omega_ac < 0.0 || self.omega_bc < 0.0 {
            return Err(invalid("omega", "transition frequencies must be non-negative"));
        }
        if self.omega_ac != 0.0 && self.omega_bc != 0.0 {
            let mismatch = (self.omega_ac - self.omega_bc - self.delta).abs();
            if mismatch > 1e-9 * self.omega_ac.abs().max(1.0) {
                return Err(invalid(
                    "delta",
                    format!("omega_ac - omega_bc differs from delta by {mismatch:e}"),
                ));
            }
        }
        Ok(())
    }
}

fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

/// Rates entering the generators.
///
/// In isotropic mode the pump-channel couplings `gamma_*_pol` hold the
/// isotropic rates, so the same generator layout serves both field modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedRates {
    pub gamma_a_pol: f64,
    pub gamma_b_pol: f64,
    pub r_a_pol: f64,
    pub r_b_pol: f64,
    pub gamma_bar: f64,
    /// Interference strength of absorption and stimulated emission.
    pub cross_pump: f64,
    /// Interference strength of spontaneous emission, `p·√(γ_a γ_b)`.
    pub cross_decay: f64,
}

impl DerivedRates {
    /// Total interference coupling between the two transitions.
    pub fn cross_total(&self) -> f64 {
        self.cross_pump + self.cross_decay
    }
}

pub fn derive_rates(params: &SystemParams) -> Result<DerivedRates> {
    params.validate()?;
    let iso_product = (params.gamma_a_iso * params.gamma_b_iso).sqrt();
    let (gamma_a_pol, gamma_b_pol, pump_alignment) = match params.field_mode {
        FieldMode::PolarizedAnisotropic => (
            POLARIZED_TO_ISOTROPIC * params.gamma_a_iso,
            POLARIZED_TO_ISOTROPIC * params.gamma_b_iso,
            1.0,
        ),
        FieldMode::Isotropic => (params.gamma_a_iso, params.gamma_b_iso, params.p),
    };
    Ok(DerivedRates {
        gamma_a_pol,
        gamma_b_pol,
        r_a_pol: params.n_bar * gamma_a_pol,
        r_b_pol: params.n_bar * gamma_b_pol,
        gamma_bar: params.gamma_bar(),
        cross_pump: pump_alignment * (gamma_a_pol * gamma_b_pol).sqrt() * params.n_bar,
        cross_decay: params.p * iso_product,
    })
}

/// Bose-Einstein occupation for the dimensionless ratio `ħω/(k_B T)`.
pub fn mean_photon_number(hbar_omega_over_kt: f64) -> Result<f64> {
    if !hbar_omega_over_kt.is_finite() {
        return Err(Error::NonFinite("hbar_omega_over_kt"));
    }
    if hbar_omega_over_kt <= 0.0 {
        return Err(invalid("hbar_omega_over_kt", "must be positive"));
    }
    Ok(1.0 / hbar_omega_over_kt.exp_m1())
}

/// The population/excited-coherence vector `(ρ_aa, ρ_bb, ρ_cc, Re ρ_ab, Im ρ_ab)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PopulationState(pub [f64; 5]);

impl PopulationState {
    pub const GROUND: Self = Self([0.0, 0.0, 1.0, 0.0, 0.0]);

    pub fn rho_aa(&self) -> f64 {
        self.0[0]
    }

    pub fn rho_bb(&self) -> f64 {
        self.0[1]
    }

    pub fn rho_cc(&self) -> f64 {
        self.0[2]
    }

    pub fn rho_ab(&self) -> Complex64 {
        Complex64::new(self.0[3], self.0[4])
    }

    pub fn trace(&self) -> f64 {
        self.0[0] + self.0[1] + self.0[2]
    }

    pub fn as_array(&self) -> &[f64; 5] {
        &self.0
    }

    /// Checks trace, population bounds and `|ρ_ab|² ≤ ρ_aa ρ_bb`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.0.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("population state"));
        }
        if (self.trace() - 1.0).abs() > tol {
            return Err(invalid("population state", format!("trace {} != 1", self.trace())));
        }
        if self.0[..3].iter().any(|&v| v < -tol || v > 1.0 + tol) {
            return Err(invalid("population state", "population outside [0, 1]"));
        }
        if self.0[3].powi(2) + self.0[4].powi(2) > self.0[0] * self.0[1] + tol {
            return Err(invalid("population state", "|rho_ab|^2 exceeds rho_aa * rho_bb"));
        }
        Ok(())
    }
}

impl From<[f64; 5]> for PopulationState {
    fn from(x: [f64; 5]) -> Self {
        Self(x)
    }
}

/// The one-photon coherence vector `(Re ρ_ac, Im ρ_ac, Re ρ_bc, Im ρ_bc)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OpticalCoherenceState(pub [f64; 4]);

impl OpticalCoherenceState {
    pub const ZERO: Self = Self([0.0; 4]);

    pub fn rho_ac(&self) -> Complex64 {
        Complex64::new(self.0[0], self.0[1])
    }

    pub fn rho_bc(&self) -> Complex64 {
        Complex64::new(self.0[2], self.0[3])
    }

    pub fn as_array(&self) -> &[f64; 4] {
        &self.0
    }

    /// Cauchy-Schwarz bounds against the paired populations.
    pub fn validate_against(&self, x: &PopulationState, tol: f64) -> Result<()> {
        if self.0.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("optical coherence state"));
        }
        if self.rho_ac().norm_sqr() > x.rho_aa() * x.rho_cc() + tol {
            return Err(invalid("optical state", "|rho_ac|^2 exceeds rho_aa * rho_cc"));
        }
        if self.rho_bc().norm_sqr() > x.rho_bb() * x.rho_cc() + tol {
            return Err(invalid("optical state", "|rho_bc|^2 exceeds rho_bb * rho_cc"));
        }
        Ok(())
    }
}

impl From<[f64; 4]> for OpticalCoherenceState {
    fn from(z: [f64; 4]) -> Self {
        Self(z)
    }
}

/// Density matrix in the basis `(|a⟩, |b⟩, |c⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix3(pub [[Complex64; 3]; 3]);

impl DensityMatrix3 {
    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Largest `|ρ_ij − conj(ρ_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Whether `|ρ_ab| ≤ √(ρ_aa ρ_bb)` holds within `tol`.
    pub fn excited_coherence_within_bound(&self, tol: f64) -> bool {
        let bound = (self.0[0][0].re * self.0[1][1].re).max(0.0).sqrt();
        self.0[0][1].norm() <= bound + tol
    }

    /// Applies `P ρ P†` for the basis permutation `perm` (new index `i` takes old `perm[i]`).
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let mut out = [[Complex64::default(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.0[perm[i]][perm[j]];
            }
        }
        Self(out)
    }
}

pub fn density_from_state(x: &PopulationState, z: &OpticalCoherenceState) -> Result<DensityMatrix3> {
    if x.0.iter().chain(z.0.iter()).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("state vector"));
    }
    let real = |v: f64| Complex64::new(v, 0.0);
    let rho_ab = x.rho_ab();
    let rho_ac = z.rho_ac();
    let rho_bc = z.rho_bc();
    Ok(DensityMatrix3([
        [real(x.rho_aa()), rho_ab, rho_ac],
        [rho_ab.conj(), real(x.rho_bb()), rho_bc],
        [rho_ac.conj(), rho_bc.conj(), real(x.rho_cc())],
    ]))
}
