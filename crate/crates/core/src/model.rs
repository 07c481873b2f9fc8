//! Exciton-qubit model of three identical, equidistant quantum dots.
//!
//! Each dot carries an excitonic dipole that points along (`|0⟩`) or against
//! (`|1⟩`) the applied field. Energies are in meV, temperatures in kelvin.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{embed, pauli_operators, ComplexMatrix};

/// Boltzmann constant in meV/K.
pub const K_B_MEV_PER_K: f64 = 0.08617333;

const DEBYE_C_M: f64 = 3.335_640_952e-30;
const JOULE_PER_MEV: f64 = 1.602_176_634e-22;
const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// The unordered dot pairs; every pair couples identically.
pub const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

/// Energy scales of the Hamiltonian, all in meV.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// Exciton energy ħω per dot.
    pub exciton_mev: f64,
    /// Dipole–field coupling ħΩ = |d·E|.
    pub field_mev: f64,
    /// Static dipolar shift ħJz between occupied dots; either sign.
    pub dipolar_mev: f64,
    /// Förster transfer ħλ.
    pub forster_mev: f64,
}

impl ModelParams {
    pub fn new(exciton_mev: f64, field_mev: f64, dipolar_mev: f64, forster_mev: f64) -> Result<Self> {
        let p = Self { exciton_mev, field_mev, dipolar_mev, forster_mev };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.exciton_mev, self.field_mev, self.dipolar_mev, self.forster_mev];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite energy in {self:?}")));
        }
        if self.forster_mev < 0.0 {
            return Err(Error::InvalidParameter(format!("Förster coupling must be >= 0, got {}", self.forster_mev)));
        }
        Ok(())
    }
}

/// Microscopic inputs from which ħΩ and ħJz are derived.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometryParams {
    pub dipole_debye: f64,
    pub efield_v_per_m: f64,
    pub separation_nm: f64,
    /// Angle between the dipoles and the inter-dot axis, radians.
    pub theta: f64,
    /// Cosine of the angle between dipole and field.
    pub cos_de: f64,
}

impl Default for GeometryParams {
    fn default() -> Self {
        Self { dipole_debye: 6.0, efield_v_per_m: 0.0, separation_nm: 5.0, theta: PI / 2.0, cos_de: 1.0 }
    }
}

impl GeometryParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.dipole_debye > 0.0) {
            return Err(Error::InvalidParameter(format!("dipole must be > 0 D, got {}", self.dipole_debye)));
        }
        if !(self.separation_nm > 0.0) {
            return Err(Error::InvalidParameter(format!("separation must be > 0 nm, got {}", self.separation_nm)));
        }
        if !(0.0..=PI).contains(&self.theta) {
            return Err(Error::InvalidParameter(format!("theta must lie in [0, pi], got {}", self.theta)));
        }
        if !(-1.0..=1.0).contains(&self.cos_de) {
            return Err(Error::InvalidParameter(format!("cos_de must lie in [-1, 1], got {}", self.cos_de)));
        }
        if !self.efield_v_per_m.is_finite() {
            return Err(Error::InvalidParameter("electric field must be finite".into()));
        }
        Ok(())
    }
}

/// ħΩ = |d·E| in meV.
pub fn omega_from_field(g: &GeometryParams) -> Result<f64> {
    g.validate()?;
    let joules = g.dipole_debye * DEBYE_C_M * g.efield_v_per_m.abs() * g.cos_de.abs();
    Ok(joules / JOULE_PER_MEV)
}

/// ħJz = d²(1 − 3cos²θ) / (4πε₀ r³) in meV.
pub fn jz_from_geometry(g: &GeometryParams) -> Result<f64> {
    g.validate()?;
    let d = g.dipole_debye * DEBYE_C_M;
    let r = g.separation_nm * 1e-9;
    let angular = 1.0 - 3.0 * g.theta.cos().powi(2);
    Ok(d * d * angular / (4.0 * PI * VACUUM_PERMITTIVITY * r.powi(3)) / JOULE_PER_MEV)
}

/// Three-dot Hamiltonian (meV):
///
/// `H = Σᵢ ħω(Szⁱ + ½) + Σᵢ ħΩ Szⁱ + ħJz Σ_{i<j} Szⁱ Szʲ + (ħλ/2) Σ_{i<j} (S₊ⁱS₋ʲ + S₋ⁱS₊ʲ)`.
pub fn build_hamiltonian(p: &ModelParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let s = pauli_operators();
    let id = ComplexMatrix::identity(8);
    let sz: Vec<ComplexMatrix> = (1..=3).map(|k| embed(&s.z, k)).collect::<Result<_>>()?;
    let sp: Vec<ComplexMatrix> = (1..=3).map(|k| embed(&s.plus, k)).collect::<Result<_>>()?;
    let sm: Vec<ComplexMatrix> = (1..=3).map(|k| embed(&s.minus, k)).collect::<Result<_>>()?;

    let mut h = ComplexMatrix::zeros(8);
    for z in &sz {
        h = &h + &(&z.scale(p.exciton_mev) + &id.scale(0.5 * p.exciton_mev));
        h = &h + &z.scale(p.field_mev);
    }
    for &(i, j) in &PAIRS {
        let (i, j) = (i - 1, j - 1);
        h = &h + &(&sz[i] * &sz[j]).scale(p.dipolar_mev);
        let hop = &(&sp[i] * &sm[j]) + &(&sm[i] * &sp[j]);
        h = &h + &hop.scale(0.5 * p.forster_mev);
    }
    Ok(h)
}

/// N̂ = Σᵢ(½ − Szⁱ): number of qubits in `|1⟩`.
pub fn excitation_number() -> ComplexMatrix {
    let s = pauli_operators();
    (1..=3).fold(ComplexMatrix::zeros(8), |acc, k| {
        let z = embed(&s.z, k).expect("site in range");
        &acc + &(&ComplexMatrix::identity(8).scale(0.5) - &z)
    })
}
