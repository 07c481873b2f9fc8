//! Lower bound τ₃ on three-qubit concurrence.
//!
//! For each bipartition `ab|c` the six generators `L_j` of SO(4) acting on
//! the pair and the generator `L₀` of SO(2) on the single qubit give
//! rotation operators `S_j = L_j ⊗ L₀`. With `ρ̃_j = S_j ρ* S_j` and
//! `λ_j(1) ≥ … ≥ λ_j(4)` the square roots of the eigenvalues of `ρρ̃_j`,
//! computed from the similar Hermitian matrix `√ρ ρ̃_j √ρ`,
//!
//! ```text
//! C_j = max{0, λ_j(1) − λ_j(2) − λ_j(3) − λ_j(4)}
//! τ₃  = (Σ_cuts Σ_j C_j² / 3)^{1/2}
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, qubit_permutation, ComplexMatrix};
use crate::state::{DensityMatrix, ZERO_CLAMP};

const NEGATIVE_TOL: f64 = 1e-11;

/// A split of the three dots into a pair and a singleton (1-based sites).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pair: (usize, usize),
    single: usize,
}

impl Bipartition {
    pub const CUTS: [Bipartition; 3] = [
        Bipartition { pair: (1, 2), single: 3 },
        Bipartition { pair: (1, 3), single: 2 },
        Bipartition { pair: (2, 3), single: 1 },
    ];

    pub fn new(pair: (usize, usize), single: usize) -> Result<Self> {
        let mut sites = [pair.0, pair.1, single];
        sites.sort_unstable();
        if sites != [1, 2, 3] {
            return Err(Error::InvalidParameter(format!("{pair:?}|{single} is not a bipartition of {{1,2,3}}")));
        }
        let pair = (pair.0.min(pair.1), pair.0.max(pair.1));
        Ok(Self { pair, single })
    }

    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    pub fn single(&self) -> usize {
        self.single
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}|{}", self.pair.0, self.pair.1, self.single)
    }
}

/// The six plane-rotation generators of SO(4): +1 at (a, b), −1 at (b, a).
pub fn so4_generators() -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(6);
    for a in 0..4 {
        for b in (a + 1)..4 {
            let rows: Vec<[f64; 4]> = (0..4)
                .map(|i| {
                    let mut r = [0.0; 4];
                    if i == a {
                        r[b] = 1.0;
                    }
                    if i == b {
                        r[a] = -1.0;
                    }
                    r
                })
                .collect();
            let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
            out.push(ComplexMatrix::from_real_rows(&refs));
        }
    }
    out
}

pub fn so2_generator() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]])
}

/// The six `S_j` for one bipartition, expressed in canonical qubit order.
#[derive(Clone, Debug)]
pub struct RotationOperatorSet {
    pub bipartition: Bipartition,
    pub ops: Vec<ComplexMatrix>,
}

pub fn rotation_ops(b: Bipartition) -> RotationOperatorSet {
    let perm = qubit_permutation([b.pair.0, b.pair.1, b.single]).expect("bipartition is a permutation");
    let l0 = so2_generator();
    let ops = so4_generators()
        .iter()
        .map(|l| perm.conjugate(&kron(l, &l0)))
        .collect();
    RotationOperatorSet { bipartition: b, ops }
}

/// `C_j` for the six generators of one bipartition.
pub fn bipartite_concurrence(rho: &DensityMatrix, b: Bipartition) -> Result<[f64; 6]> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, got: rho.dim() });
    }
    let set = rotation_ops(b);
    let rho_conj = rho.matrix().conj();
    let sqrt_rho = hermitian_eig(rho.matrix())?.map(|e| if e < ZERO_CLAMP { 0.0 } else { e.sqrt() });
    let mut out = [0.0; 6];
    for (c, s) in out.iter_mut().zip(&set.ops) {
        let tilde = &(s * &rho_conj) * s;
        let r = &(&sqrt_rho * &tilde) * &sqrt_rho;
        let r = (&r + &r.dagger()).scale(0.5);
        let mut roots = Vec::with_capacity(8);
        for z in hermitian_eig(&r)?.eigenvalues {
            if z < -NEGATIVE_TOL {
                return Err(Error::BadSpectrum { value: format!("{z}") });
            }
            // rounding noise below the clamp would otherwise enter as its square root
            roots.push(if z < ZERO_CLAMP { 0.0 } else { z.sqrt() });
        }
        roots.sort_by(|a, b| b.total_cmp(a));
        *c = (roots[0] - roots[1] - roots[2] - roots[3]).max(0.0);
    }
    Ok(out)
}

/// Per-bipartition breakdown of τ₃.
#[derive(Clone, Debug)]
pub struct Tau3Breakdown {
    pub terms: Vec<(Bipartition, [f64; 6])>,
    pub tau3: f64,
}

impl Tau3Breakdown {
    /// Σ_j C_j² for one bipartition.
    pub fn cut_weight(&self, b: Bipartition) -> Option<f64> {
        self.terms.iter().find(|(cut, _)| *cut == b).map(|(_, c)| c.iter().map(|x| x * x).sum())
    }
}

pub fn tau3_breakdown(rho: &DensityMatrix) -> Result<Tau3Breakdown> {
    let terms = Bipartition::CUTS
        .iter()
        .map(|&b| bipartite_concurrence(rho, b).map(|c| (b, c)))
        .collect::<Result<Vec<_>>>()?;
    let sum: f64 = terms.iter().flat_map(|(_, c)| c.iter()).map(|x| x * x).sum();
    Ok(Tau3Breakdown { terms, tau3: (sum / 3.0).sqrt() })
}

pub fn tau3(rho: &DensityMatrix) -> Result<f64> {
    Ok(tau3_breakdown(rho)?.tau3)
}
