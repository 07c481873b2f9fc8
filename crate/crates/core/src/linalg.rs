//! Dense complex linear algebra for few-qubit operators.
//!
//! Everything here works on small square matrices (at most 8×8), so the
//! representation is a plain dense `nalgebra` matrix behind a newtype. Qubit
//! ordering is big-endian: qubit 1 is the leftmost tensor factor and `|000⟩`
//! is basis index 0.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance used by the validity predicates of downstream types.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Dense square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(dim, dim, &mut f))
    }

    /// Real matrix given row by row. Panics if `rows` is not square.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { C64::new(diag[i], 0.0) } else { C64::new(0.0, 0.0) })
    }

    /// Projector `|v⟩⟨v|` onto an (unnormalized) vector.
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    /// Copy of `self` with one entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: C64) -> Self {
        let mut m = self.0.clone();
        m[(i, j)] = value;
        Self(m)
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn scale_complex(&self, s: C64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `ABA†` with `A = self`.
    pub fn conjugate(&self, b: &Self) -> Self {
        Self(&self.0 * &b.0 * self.0.adjoint())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Expectation value `⟨v|M|v⟩`.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        let n = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            let mut row = C64::new(0.0, 0.0);
            for j in 0..n {
                row += self.0[(i, j)] * v[j];
            }
            acc += v[i].conj() * row;
        }
        acc
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self * &self.dagger()).max_abs_diff(&Self::identity(self.dim())) <= tol
    }

    /// Hermitian with smallest eigenvalue no lower than `-tol`.
    pub fn is_psd(&self, tol: f64) -> bool {
        match hermitian_eig(self) {
            Ok(s) => s.eigenvalues.first().is_none_or(|&e| e >= -tol),
            Err(_) => false,
        }
    }
}

impl From<DMatrix<C64>> for ComplexMatrix {
    fn from(m: DMatrix<C64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "ComplexMatrix must be square");
        Self(m)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Kronecker product; qubit order follows argument order.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix(a.0.kronecker(&b.0))
}

/// Single-qubit ladder and spin operators in the `(|0⟩, |1⟩)` basis.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    /// `|0⟩⟨1|`
    pub plus: ComplexMatrix,
    /// `|1⟩⟨0|`
    pub minus: ComplexMatrix,
    /// `½(|0⟩⟨0| − |1⟩⟨1|)`
    pub z: ComplexMatrix,
}

pub fn pauli_operators() -> SpinOperators {
    SpinOperators {
        plus: ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]),
        minus: ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]),
        z: ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, -0.5]]),
    }
}

pub const N_QUBITS: usize = 3;

pub(crate) fn check_site(site: usize) -> Result<()> {
    if (1..=N_QUBITS).contains(&site) {
        Ok(())
    } else {
        Err(Error::SiteOutOfRange(site))
    }
}

/// Lift a single-qubit operator to the three-qubit space, acting on `site`
/// (1-based) and as identity elsewhere.
pub fn embed(op: &ComplexMatrix, site: usize) -> Result<ComplexMatrix> {
    check_site(site)?;
    if op.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: op.dim() });
    }
    let id = ComplexMatrix::identity(2);
    let factors: Vec<&ComplexMatrix> = (1..=N_QUBITS).map(|s| if s == site { op } else { &id }).collect();
    Ok(kron(&kron(factors[0], factors[1]), factors[2]))
}

/// Permutation operator taking a three-qubit state written in tensor order
/// `(order[0], order[1], order[2])` (1-based sites) to canonical `1⊗2⊗3` order.
pub fn qubit_permutation(order: [usize; 3]) -> Result<ComplexMatrix> {
    for &s in &order {
        check_site(s)?;
    }
    let mut seen = [false; 3];
    for &s in &order {
        if std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::InvalidParameter(format!("{order:?} is not a permutation")));
        }
    }
    let mut p = ComplexMatrix::zeros(8);
    for idx in 0..8 {
        let mut canonical = 0usize;
        for (pos, &site) in order.iter().enumerate() {
            let bit = (idx >> (2 - pos)) & 1;
            canonical |= bit << (3 - site);
        }
        p.0[(canonical, idx)] = C64::new(1.0, 0.0);
    }
    Ok(p)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// `V f(Λ) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = self.eigenvectors.as_matrix();
        let mut out = DMatrix::<C64>::zeros(n, n);
        for (k, &e) in self.eigenvalues.iter().enumerate() {
            let w = f(e);
            if w == 0.0 {
                continue;
            }
            let col = v.column(k);
            out += (col * col.adjoint()) * C64::new(w, 0.0);
        }
        ComplexMatrix(out)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|e| e)
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.as_matrix().column(k).iter().copied().collect()
    }
}

pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Spectrum> {
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    let sym = (&m.0 + m.0.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 10_000).ok_or(Error::EigenFailure)?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let n = order.len();
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Spectrum { eigenvalues, eigenvectors: ComplexMatrix(eigenvectors) })
}

/// Eigenvalues of an arbitrary square matrix via complex Schur decomposition.
/// Retries with a looser deflation threshold if the QR sweep stalls.
pub fn general_eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    for eps in [f64::EPSILON, 64.0 * f64::EPSILON, 1e-12] {
        if let Some(schur) = Schur::try_new(m.0.clone(), eps, 100_000) {
            let (_, t) = schur.unpack();
            return Ok((0..t.nrows()).map(|i| t[(i, i)]).collect());
        }
    }
    Err(Error::EigenFailure)
}
