//! Density matrices and the entropic quantities defined on them.
//!
//! All entropies are in bits.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{check_site, hermitian_eig, ComplexMatrix, HERMITIAN_TOL};

/// Eigenvalues (or probabilities) below this are treated as exact zeros
/// before taking logarithms.
pub const ZERO_CLAMP: f64 = 1e-14;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    temperature: Option<f64>,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let deviation = mat.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian (deviation {deviation:.3e})")));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr} != 1")));
        }
        let min_eig = hermitian_eig(&mat)?.eigenvalues[0];
        if min_eig < -HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {min_eig:.3e}")));
        }
        Ok(Self { mat, temperature: None })
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn new_unchecked(mat: ComplexMatrix) -> Self {
        Self { mat, temperature: None }
    }

    pub fn with_temperature(mut self, kelvin: f64) -> Self {
        self.temperature = Some(kelvin);
        self
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new_unchecked(ComplexMatrix::identity(dim).scale(1.0 / dim as f64))
    }

    /// `|ψ⟩⟨ψ|` for the normalized version of `psi`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidDensityMatrix("zero state vector".into()));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self::new_unchecked(ComplexMatrix::outer(&v)))
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(probs))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn temperature(&self) -> Option<f64> {
        self.temperature
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.mat.get(i, j)
    }

    /// Eigenvalues in ascending order with values below [`ZERO_CLAMP`] set to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eig(&self.mat)
            .expect("density matrix is Hermitian")
            .eigenvalues
            .into_iter()
            .map(|e| if e < ZERO_CLAMP { 0.0 } else { e })
            .collect()
    }

    /// `UρU†`.
    pub fn transform(&self, u: &ComplexMatrix) -> Self {
        Self { mat: u.conjugate(&self.mat), temperature: self.temperature }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::new_unchecked(crate::linalg::kron(&self.mat, &other.mat))
    }
}

/// `−Σ p log₂ p` with `0·log 0 = 0`.
pub fn shannon_entropy(probs: impl IntoIterator<Item = f64>) -> f64 {
    probs.into_iter().filter(|&p| p > ZERO_CLAMP).map(|p| -p * p.log2()).sum()
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy(rho.eigenvalues()).max(0.0)
}

/// `S(ρ‖σ) = Tr ρ log₂ ρ − Tr ρ log₂ σ`.
///
/// For σ produced by a projective measurement channel prefer
/// [`crate::discord::relative_entropy_to_dephased`], which is exact.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: sigma.dim() });
    }
    let neg_entropy = -von_neumann_entropy(rho);
    let spec = hermitian_eig(sigma.matrix())?;
    let mut cross = 0.0;
    for (k, &mu) in spec.eigenvalues.iter().enumerate() {
        let weight = rho.matrix().expectation(&spec.eigenvector(k)).re;
        if mu < ZERO_CLAMP {
            if weight > 1e-12 {
                return Err(Error::SupportViolation { weight });
            }
            continue;
        }
        cross -= weight * mu.log2();
    }
    Ok((neg_entropy + cross).max(0.0))
}

/// Reduced state of one qubit (1-based `keep`) of a three-qubit state.
pub fn partial_trace(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix> {
    check_site(keep)?;
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, got: rho.dim() });
    }
    let shift = 3 - keep;
    let out = ComplexMatrix::from_fn(2, |a, b| {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..8usize {
            if (i >> shift) & 1 != a {
                continue;
            }
            let j = (i & !(1 << shift)) | (b << shift);
            acc += rho.get(i, j);
        }
        acc
    });
    Ok(DensityMatrix::new_unchecked(out))
}

/// Reduced two-qubit state after tracing out `drop`; the remaining qubits keep
/// their relative order.
pub fn reduce_to_pair(rho: &DensityMatrix, drop: usize) -> Result<DensityMatrix> {
    check_site(drop)?;
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, got: rho.dim() });
    }
    let kept: Vec<usize> = (1..=3).filter(|&s| s != drop).collect();
    let full_index = |pair: usize, traced: usize| -> usize {
        let mut idx = 0;
        idx |= ((pair >> 1) & 1) << (3 - kept[0]);
        idx |= (pair & 1) << (3 - kept[1]);
        idx |= traced << (3 - drop);
        idx
    };
    let out = ComplexMatrix::from_fn(4, |a, b| (0..2).map(|t| rho.get(full_index(a, t), full_index(b, t))).sum());
    Ok(DensityMatrix::new_unchecked(out))
}

/// Reduced state of one side of a two-qubit state; `keep` is 1 (left) or 2.
pub fn partial_trace_two_qubit(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.dim() });
    }
    if !(1..=2).contains(&keep) {
        return Err(Error::SiteOutOfRange(keep));
    }
    let out = ComplexMatrix::from_fn(2, |a, b| {
        (0..2)
            .map(|t| if keep == 1 { rho.get(2 * a + t, 2 * b + t) } else { rho.get(2 * t + a, 2 * t + b) })
            .sum()
    });
    Ok(DensityMatrix::new_unchecked(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubit(p0: f64, coherence: C64) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => C64::new(p0, 0.0),
            (1, 1) => C64::new(1.0 - p0, 0.0),
            (0, 1) => coherence,
            _ => coherence.conj(),
        }))
        .unwrap()
    }

    #[test]
    fn entropy_cases() {
        let pure0 = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        assert_eq!(von_neumann_entropy(&pure0), 0.0);
        assert!((von_neumann_entropy(&DensityMatrix::maximally_mixed(8)) - 3.0).abs() < 1e-12);
        let half = DensityMatrix::from_diagonal(&[0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((von_neumann_entropy(&half) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        assert!(DensityMatrix::from_diagonal(&[0.6, 0.6]).is_err());
        assert!(DensityMatrix::from_diagonal(&[1.5, -0.5]).is_err());
        let non_herm = ComplexMatrix::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]);
        assert!(DensityMatrix::new(non_herm).is_err());
    }

    #[test]
    fn relative_entropy_cases() {
        let rho = qubit(0.7, C64::new(0.2, 0.1));
        assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-12);
        let zero = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((relative_entropy(&zero, &mixed).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(relative_entropy(&mixed, &zero), Err(Error::SupportViolation { .. })));
    }

    #[test]
    fn relative_entropy_to_diagonal_is_entropy_gap() {
        let rho = qubit(0.3, C64::new(0.1, -0.25));
        let diag = DensityMatrix::from_diagonal(&rho.matrix().diagonal_real()).unwrap();
        let expected = von_neumann_entropy(&diag) - von_neumann_entropy(&rho);
        assert!((relative_entropy(&rho, &diag).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product() {
        let a = qubit(0.9, C64::new(0.1, 0.0));
        let b = qubit(0.4, C64::new(0.0, 0.3));
        let c = qubit(0.2, C64::new(-0.1, 0.1));
        let abc = a.tensor(&b).tensor(&c);
        for (site, expected) in [(1, &a), (2, &b), (3, &c)] {
            let reduced = partial_trace(&abc, site).unwrap();
            assert!(reduced.matrix().max_abs_diff(expected.matrix()) < 1e-15);
        }
        let mixed = partial_trace(&DensityMatrix::maximally_mixed(8), 2).unwrap();
        assert!(mixed.matrix().max_abs_diff(DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);
        assert!(partial_trace(&abc, 0).is_err());

        let ac = reduce_to_pair(&abc, 2).unwrap();
        assert!(ac.matrix().max_abs_diff(a.tensor(&c).matrix()) < 1e-15);
        assert!(partial_trace_two_qubit(&ac, 1).unwrap().matrix().max_abs_diff(a.matrix()) < 1e-15);
        assert!(partial_trace_two_qubit(&ac, 2).unwrap().matrix().max_abs_diff(c.matrix()) < 1e-15);
    }
}
