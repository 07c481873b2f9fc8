//! Gibbs states of the three-dot model and their closed-form matrix elements.
//!
//! The Hamiltonian conserves the number of `|1⟩` qubits and is symmetric
//! under dot permutations, so every thermal state has the block form
//!
//! ```text
//! ρ11  .    .    .    .    .    .    .
//!  .  ρ22  ρ23   .   ρ23   .    .    .
//!  .  ρ23  ρ22   .   ρ23   .    .    .
//!  .   .    .   ρ44   .   ρ46  ρ46   .
//!  .  ρ23  ρ23   .   ρ22   .    .    .
//!  .   .    .   ρ46   .   ρ44  ρ46   .
//!  .   .    .   ρ46   .   ρ46  ρ44   .
//!  .   .    .    .    .    .    .   ρ88
//! ```
//!
//! with the one-`|1⟩` sector on indices {1, 2, 4} and the two-`|1⟩` sector on
//! {3, 5, 6} (0-based).

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::model::{ModelParams, K_B_MEV_PER_K};
use crate::state::DensityMatrix;

pub const BLOCK_TOL: f64 = 1e-10;

const ONE_EXCITATION: [usize; 3] = [1, 2, 4];
const TWO_EXCITATION: [usize; 3] = [3, 5, 6];

pub fn beta(temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::NonPositiveTemperature(temperature));
    }
    Ok(1.0 / (K_B_MEV_PER_K * temperature))
}

/// Z = Σᵢ exp(−Eᵢ / k_B T) over all eigenvalues of `h` (meV).
pub fn partition_function(h: &ComplexMatrix, temperature: f64) -> Result<f64> {
    let beta = beta(temperature)?;
    let spec = hermitian_eig(h)?;
    Ok(spec.eigenvalues.iter().map(|e| (-beta * e).exp()).sum())
}

/// ρ = exp(−H / k_B T) / Z, evaluated through the eigendecomposition of `h`.
pub fn gibbs_state(h: &ComplexMatrix, temperature: f64) -> Result<DensityMatrix> {
    let beta = beta(temperature)?;
    let spec = hermitian_eig(h)?;
    let ground = spec.eigenvalues[0];
    let weights: Vec<f64> = spec.eigenvalues.iter().map(|e| (-beta * (e - ground)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let rho = spec.map(|e| (-beta * (e - ground)).exp() / z);
    // Hermitian by construction up to rounding; symmetrize away the residue.
    let rho = (&rho + &rho.dagger()).scale(0.5);
    Ok(DensityMatrix::new_unchecked(rho).with_temperature(temperature))
}

/// The six independent entries of a block-structured thermal state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormElements {
    pub rho11: f64,
    pub rho22: f64,
    pub rho23: f64,
    pub rho44: f64,
    pub rho46: f64,
    pub rho88: f64,
}

impl ClosedFormElements {
    /// ρ11 + 3ρ22 + 3ρ44 + ρ88.
    pub fn trace(&self) -> f64 {
        self.rho11 + 3.0 * self.rho22 + 3.0 * self.rho44 + self.rho88
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(8, |i, j| {
            let v = match (i, j) {
                (0, 0) => self.rho11,
                (7, 7) => self.rho88,
                _ if i == j && ONE_EXCITATION.contains(&i) => self.rho22,
                _ if i == j && TWO_EXCITATION.contains(&i) => self.rho44,
                _ if ONE_EXCITATION.contains(&i) && ONE_EXCITATION.contains(&j) => self.rho23,
                _ if TWO_EXCITATION.contains(&i) && TWO_EXCITATION.contains(&j) => self.rho46,
                _ => 0.0,
            };
            C64::new(v, 0.0)
        })
    }

    /// Largest difference between corresponding entries.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.rho11 - other.rho11,
            self.rho22 - other.rho22,
            self.rho23 - other.rho23,
            self.rho44 - other.rho44,
            self.rho46 - other.rho46,
            self.rho88 - other.rho88,
        ]
        .iter()
        .fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Energies entering the closed forms. Only the combinations `Fz` and
/// `2d + w` are fixed by the model: `Fz = ħJz`, `2d + w = ħω + ħΩ − ħJz`.
/// We pin `w = ħω`, `d = (ħΩ − ħJz)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormSymbols {
    pub d: f64,
    pub fz: f64,
    pub w: f64,
    pub lambda: f64,
}

impl From<&ModelParams> for ClosedFormSymbols {
    fn from(p: &ModelParams) -> Self {
        Self {
            d: 0.5 * (p.field_mev - p.dipolar_mev),
            fz: p.dipolar_mev,
            w: p.exciton_mev,
            lambda: p.forster_mev,
        }
    }
}

/// ln Σ sᵢ exp(xᵢ); the signed sum must be positive.
fn log_sum_exp(terms: &[(f64, f64)]) -> f64 {
    let m = terms.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = terms.iter().map(|&(sign, x)| sign * (x - m).exp()).sum();
    debug_assert!(s > 0.0, "signed exponential sum is not positive");
    m + s.ln()
}

/// ln(1 + eˣ)
fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// ln|1 − eˣ| for x ≠ 0.
fn ln_abs_one_minus_exp(x: f64) -> f64 {
    if x > 0.0 {
        x + (-(-x).exp_m1()).ln()
    } else {
        (-x.exp_m1()).ln()
    }
}

const LN2: f64 = std::f64::consts::LN_2;

/// Closed-form thermal elements, evaluated in log space so that β·meV
/// arguments far beyond the `f64` exponent range stay finite.
pub fn closed_form_elements(p: &ModelParams, temperature: f64) -> Result<ClosedFormElements> {
    p.validate()?;
    let beta = beta(temperature)?;
    let s = ClosedFormSymbols::from(p);
    Ok(closed_form_from_symbols(&s, beta))
}

pub fn closed_form_from_symbols(s: &ClosedFormSymbols, beta: f64) -> ClosedFormElements {
    let ClosedFormSymbols { d, fz, w, lambda: l } = *s;
    let a = beta * (2.0 * d + fz + w);
    let bl = beta * l;
    // ln[e^{β(2d+2Fz+w)} + e^{βλ} − e^{β(2d+Fz+w+λ)} + e^{β(4d+2Fz+2w+λ)} + 2e^{β(2d+2Fz+w+3λ/2)}]
    let ln_b = log_sum_exp(&[
        (1.0, beta * (2.0 * d + 2.0 * fz + w)),
        (1.0, bl),
        (-1.0, a + bl),
        (1.0, 2.0 * a + bl),
        (1.0, LN2 + beta * (2.0 * d + 2.0 * fz + w + 1.5 * l)),
    ]);
    let ln_shared = softplus(a) + ln_b;
    // ln(1 + 2e^{3βλ/2})
    let ln_hop = log_sum_exp(&[(1.0, 0.0), (1.0, LN2 + 1.5 * bl)]);

    let rho11 = (bl - ln_shared).exp();

    let rho22 = (ln_hop
        - 3f64.ln()
        - log_sum_exp(&[
            (1.0, softplus(a) + ln_hop),
            (1.0, beta * (l - 2.0 * d - 2.0 * fz - w)),
            (1.0, beta * (4.0 * d + fz + 2.0 * w + l)),
        ]))
    .exp();

    let rho44 = (ln_hop
        - 3f64.ln()
        - log_sum_exp(&[
            (1.0, softplus(-a) + ln_hop),
            (1.0, beta * (l - 4.0 * d - 3.0 * fz - 2.0 * w)),
            (1.0, beta * (2.0 * d + w + l)),
        ]))
    .exp();

    let coherence = |prefactor_exponent: f64| -> f64 {
        if l == 0.0 {
            return 0.0;
        }
        let sign = if l > 0.0 { -1.0 } else { 1.0 };
        sign * (prefactor_exponent + ln_abs_one_minus_exp(1.5 * bl) - 3f64.ln() - ln_shared).exp()
    };
    let rho23 = coherence(beta * (2.0 * d + 2.0 * fz + w));
    let rho46 = coherence(beta * (4.0 * d + 3.0 * fz + 2.0 * w));

    let rho88 = rho88_with_sign(s, beta, 1.0);

    ClosedFormElements { rho11, rho22, rho23, rho44, rho46, rho88 }
}

/// ρ88 with the final denominator term `2e^{−β(d+Fz+2w+λ/2)}`, i.e. the
/// hopping enhancement of the one-`|1⟩` sector taken with the wrong sign.
/// Agrees with the Gibbs state only at λ = 0.
pub fn rho88_sign_flipped(p: &ModelParams, temperature: f64) -> Result<f64> {
    let beta = beta(temperature)?;
    Ok(rho88_with_sign(&ClosedFormSymbols::from(p), beta, -1.0))
}

fn rho88_with_sign(s: &ClosedFormSymbols, beta: f64, half_hop_sign: f64) -> f64 {
    let ClosedFormSymbols { d, fz, w, lambda: l } = *s;
    let num = 3.0 * beta * d;
    let den = log_sum_exp(&[
        (1.0, num),
        (1.0, -3.0 * beta * (d + fz + w)),
        (1.0, LN2 + beta * (d - w + 0.5 * l)),
        (1.0, beta * (d - w - l)),
        (1.0, -beta * (d + fz + 2.0 * w + l)),
        (1.0, LN2 - beta * (d + fz + 2.0 * w - half_hop_sign * 0.5 * l)),
    ]);
    (num - den).exp()
}

/// An entry that breaks the thermal block pattern. Indices are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockViolation {
    pub row: usize,
    pub col: usize,
    pub expected: C64,
    pub found: C64,
    pub rule: &'static str,
}

impl fmt::Display for BlockViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry ({}, {}) violates {}: expected {:.6e}, found {:.6e}",
            self.row, self.col, self.rule, self.expected, self.found
        )
    }
}

impl std::error::Error for BlockViolation {}

/// Checks the zero pattern and the degeneracies of a thermal state, and
/// extracts its six independent entries.
pub fn validate_blocks(rho: &DensityMatrix) -> std::result::Result<ClosedFormElements, BlockViolation> {
    if rho.dim() != 8 {
        return Err(BlockViolation {
            row: 0,
            col: 0,
            expected: C64::new(8.0, 0.0),
            found: C64::new(rho.dim() as f64, 0.0),
            rule: "dimension 8",
        });
    }
    let reference = ClosedFormElements {
        rho11: rho.get(0, 0).re,
        rho22: rho.get(1, 1).re,
        rho23: rho.get(1, 2).re,
        rho44: rho.get(3, 3).re,
        rho46: rho.get(3, 5).re,
        rho88: rho.get(7, 7).re,
    };
    let template = reference.to_matrix();
    for i in 0..8 {
        for j in 0..8 {
            let expected = template.get(i, j);
            let found = rho.get(i, j);
            if (found - expected).norm() > BLOCK_TOL {
                let rule = if expected == C64::new(0.0, 0.0) && !same_block(i, j) {
                    "zero pattern"
                } else if i == j {
                    "equal diagonal within sector"
                } else {
                    "equal coherence within sector"
                };
                return Err(BlockViolation { row: i + 1, col: j + 1, expected, found, rule });
            }
        }
    }
    Ok(reference)
}

fn same_block(i: usize, j: usize) -> bool {
    i == j
        || (ONE_EXCITATION.contains(&i) && ONE_EXCITATION.contains(&j))
        || (TWO_EXCITATION.contains(&i) && TWO_EXCITATION.contains(&j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_hamiltonian;
    use crate::state::von_neumann_entropy;

    fn params(w: f64, o: f64, j: f64, l: f64) -> ModelParams {
        ModelParams::new(w, o, j, l).unwrap()
    }

    #[test]
    fn partition_function_cases() {
        assert!((partition_function(&ComplexMatrix::zeros(8), 10.0).unwrap() - 8.0).abs() < 1e-12);
        let mut diag = [0.0; 8];
        diag[7] = 2.0;
        let h = ComplexMatrix::from_real_diagonal(&diag);
        let t = 15.0;
        let expected = 7.0 + (-2.0 / (K_B_MEV_PER_K * t)).exp();
        assert!((partition_function(&h, t).unwrap() - expected).abs() < 1e-12);
        assert!(matches!(partition_function(&h, 0.0), Err(Error::NonPositiveTemperature(_))));
        assert!(gibbs_state(&h, -1.0).is_err());
    }

    #[test]
    fn limits() {
        let h = build_hamiltonian(&params(0.0, 2.5, 0.2, 5.0)).unwrap();
        let hot = gibbs_state(&h, 1e9).unwrap();
        assert!(hot.matrix().max_abs_diff(DensityMatrix::maximally_mixed(8).matrix()) < 1e-6);

        // Non-degenerate ground state: λ < 0 is not allowed, so use a field
        // strong enough to isolate |111⟩.
        let h = build_hamiltonian(&params(0.0, 20.0, 0.2, 1.0)).unwrap();
        let cold = gibbs_state(&h, 0.1).unwrap();
        let mut ground = ComplexMatrix::zeros(8);
        ground = ground.with_entry(7, 7, C64::new(1.0, 0.0));
        assert!(cold.matrix().max_abs_diff(&ground) < 1e-12);
    }

    #[test]
    fn closed_form_high_temperature_and_no_hopping() {
        let p = params(0.3, 2.5, 1.0, 4.0);
        let e = closed_form_elements(&p, 1e12).unwrap();
        let uniform = ClosedFormElements { rho11: 0.125, rho22: 0.125, rho23: 0.0, rho44: 0.125, rho46: 0.0, rho88: 0.125 };
        assert!(e.max_abs_diff(&uniform) < 1e-9);

        let e = closed_form_elements(&params(0.3, 2.5, 1.0, 0.0), 7.0).unwrap();
        assert_eq!(e.rho23, 0.0);
        assert_eq!(e.rho46, 0.0);
        assert!((e.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_gibbs_state() {
        for &(w, o, j, l, t) in &[
            (0.0, 0.0, 0.18, 5.0, 5.0),
            (1.2, 2.5, -2.0, 10.0, 20.0),
            (0.0, 5.0, 2.0, 2.0, 1.0),
            (3.0, 0.0, -1.0, 15.0, 0.5),
            (0.5, 2.5, 0.0, 0.0, 300.0),
        ] {
            let p = params(w, o, j, l);
            let numeric = validate_blocks(&gibbs_state(&build_hamiltonian(&p).unwrap(), t).unwrap()).unwrap();
            let closed = closed_form_elements(&p, t).unwrap();
            assert!(numeric.max_abs_diff(&closed) < 1e-12, "{numeric:?}\n{closed:?}");
        }
    }

    #[test]
    fn only_two_d_plus_w_matters() {
        let base = ClosedFormSymbols { d: 0.7, fz: -0.4, w: 1.1, lambda: 3.0 };
        let shifted = ClosedFormSymbols { d: 0.2, w: 2.1, ..base };
        let b = 1.0 / (K_B_MEV_PER_K * 12.0);
        assert!(closed_form_from_symbols(&base, b).max_abs_diff(&closed_form_from_symbols(&shifted, b)) < 1e-14);
    }

    #[test]
    fn sign_flipped_rho88_only_agrees_without_hopping() {
        let t = 10.0;
        let p = params(0.0, 1.0, 0.5, 0.0);
        let good = closed_form_elements(&p, t).unwrap().rho88;
        assert!((rho88_sign_flipped(&p, t).unwrap() - good).abs() < 1e-14);
        let p = params(0.0, 1.0, 0.5, 4.0);
        let good = closed_form_elements(&p, t).unwrap().rho88;
        assert!((rho88_sign_flipped(&p, t).unwrap() - good).abs() > 1e-3);
    }

    #[test]
    fn closed_form_survives_very_low_temperature() {
        let p = params(0.0, 5.0, 2.0, 15.0);
        let e = closed_form_elements(&p, 0.01).unwrap();
        for x in [e.rho11, e.rho22, e.rho23, e.rho44, e.rho46, e.rho88] {
            assert!(x.is_finite());
        }
        assert!((e.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn block_validation() {
        let h = build_hamiltonian(&params(0.0, 2.5, 0.3, 6.0)).unwrap();
        let rho = gibbs_state(&h, 8.0).unwrap();
        assert!(validate_blocks(&rho).is_ok());

        let bad = DensityMatrix::new_unchecked(rho.matrix().with_entry(1, 3, C64::new(0.01, 0.0)));
        let err = validate_blocks(&bad).unwrap_err();
        assert_eq!((err.row, err.col), (2, 4));
        assert!(err.to_string().contains("(2, 4)"));

        let mixed = validate_blocks(&DensityMatrix::maximally_mixed(8)).unwrap();
        assert_eq!(mixed.rho23, 0.0);
        assert_eq!(mixed.rho46, 0.0);
    }

    #[test]
    fn entropy_grows_with_temperature() {
        let h = build_hamiltonian(&params(0.0, 2.5, 0.18, 5.0)).unwrap();
        let mut last = -1.0;
        for k in 0..60 {
            let t = 0.5 * 1.1f64.powi(k);
            let s = von_neumann_entropy(&gibbs_state(&h, t).unwrap());
            assert!(s >= last - 1e-12, "entropy decreased at T = {t}");
            last = s;
        }
    }
}
