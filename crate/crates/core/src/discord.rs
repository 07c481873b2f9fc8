//! Bipartite and global quantum discord under local projective measurements.
//!
//! Global discord of a three-qubit state is
//!
//! ```text
//! D(ρ) = min_{θ,φ} [ S(ρ‖Φ(ρ)) − Σ_j S(ρ_j‖Φ_j(ρ_j)) ]
//! ```
//!
//! where `Φ` dephases in the product basis selected by the six Bloch angles
//! and `Φ_j` is its restriction to qubit `j`. For rank-one projective
//! measurements `S(ρ‖Φ(ρ)) = S(Φ(ρ)) − S(ρ)`, and the spectrum of `Φ(ρ)` is
//! just the outcome distribution, which is what the objective evaluates.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{check_site, kron, ComplexMatrix};
use crate::optimize::NelderMead;
use crate::state::{
    partial_trace, partial_trace_two_qubit, shannon_entropy, von_neumann_entropy, DensityMatrix, ZERO_CLAMP,
};
use crate::thermal::{validate_blocks, ClosedFormElements};

/// Bloch angles of the three local measurements; `θ ∈ [0, π)`, `φ ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementAngles {
    pub theta: [f64; 3],
    pub phi: [f64; 3],
}

impl MeasurementAngles {
    pub fn new(theta: [f64; 3], phi: [f64; 3]) -> Result<Self> {
        if theta.iter().any(|t| !(0.0..PI).contains(t)) || phi.iter().any(|p| !(0.0..TAU).contains(p)) {
            return Err(Error::InvalidParameter(format!("angles out of range: theta {theta:?}, phi {phi:?}")));
        }
        Ok(Self { theta, phi })
    }

    /// Every qubit measured in the σz eigenbasis.
    pub fn sigma_z() -> Self {
        Self { theta: [0.0; 3], phi: [0.0; 3] }
    }

    pub fn symmetric(theta: f64, phi: f64) -> Self {
        Self::from_unbounded(&[theta, phi, theta, phi, theta, phi])
    }

    /// Maps arbitrary reals `(θ₁, φ₁, θ₂, φ₂, θ₃, φ₃)` to the canonical
    /// ranges. Shifting θ by π swaps the two projectors, which leaves the
    /// measurement unchanged.
    pub fn from_unbounded(x: &[f64]) -> Self {
        assert_eq!(x.len(), 6);
        let theta = [0, 2, 4].map(|k| x[k].rem_euclid(PI));
        let phi = [1, 3, 5].map(|k| x[k].rem_euclid(TAU));
        // rem_euclid can round up to the modulus itself
        Self { theta: theta.map(|t| if t >= PI { 0.0 } else { t }), phi: phi.map(|p| if p >= TAU { 0.0 } else { p }) }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        (0..3).flat_map(|k| [self.theta[k], self.phi[k]]).collect()
    }
}

/// Orthonormal measurement vectors `(ψ₁, ψ₂)` with `Π_k = |ψ_k⟩⟨ψ_k|`.
fn measurement_basis(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    let phase = C64::from_polar(1.0, -phi);
    [[C64::new(c, 0.0), phase * s], [C64::new(s, 0.0), -phase * c]]
}

/// `Π₁ = [[cos²(θ/2), e^{iφ}cos(θ/2)sin(θ/2)], [e^{−iφ}cos(θ/2)sin(θ/2), sin²(θ/2)]]`, `Π₂ = I − Π₁`.
pub fn local_projectors(a: &MeasurementAngles, site: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_site(site)?;
    let [v1, v2] = measurement_basis(a.theta[site - 1], a.phi[site - 1]);
    Ok((ComplexMatrix::outer(&v1), ComplexMatrix::outer(&v2)))
}

fn product_basis(a: &MeasurementAngles) -> Vec<[C64; 8]> {
    let local: Vec<[[C64; 2]; 2]> = (0..3).map(|k| measurement_basis(a.theta[k], a.phi[k])).collect();
    let mut out = Vec::with_capacity(8);
    for k in 0..8usize {
        let (j1, j2, j3) = ((k >> 2) & 1, (k >> 1) & 1, k & 1);
        let mut v = [C64::new(0.0, 0.0); 8];
        for (idx, slot) in v.iter_mut().enumerate() {
            *slot = local[0][j1][(idx >> 2) & 1] * local[1][j2][(idx >> 1) & 1] * local[2][j3][idx & 1];
        }
        out.push(v);
    }
    out
}

/// `Φ(ρ) = Σ_k Π_k ρ Π_k` over the eight product projectors.
pub fn dephasing_channel(rho: &DensityMatrix, a: &MeasurementAngles) -> Result<DensityMatrix> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, got: rho.dim() });
    }
    let projectors: Vec<(ComplexMatrix, ComplexMatrix)> =
        (1..=3).map(|s| local_projectors(a, s)).collect::<Result<_>>()?;
    let mut out = ComplexMatrix::zeros(8);
    for k in 0..8usize {
        let pick = |site: usize, bit: usize| if bit == 0 { &projectors[site].0 } else { &projectors[site].1 };
        let p = kron(&kron(pick(0, (k >> 2) & 1), pick(1, (k >> 1) & 1)), pick(2, k & 1));
        out = &out + &(&(&p * rho.matrix()) * &p);
    }
    Ok(DensityMatrix::new_unchecked(out))
}

/// Single-qubit dephasing `Φ_j(ρ_j) = Σ_i Π_i ρ_j Π_i`.
pub fn local_dephasing(rho: &DensityMatrix, theta: f64, phi: f64) -> Result<DensityMatrix> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: rho.dim() });
    }
    let out = measurement_basis(theta, phi).iter().fold(ComplexMatrix::zeros(2), |acc, v| {
        let p = ComplexMatrix::outer(v);
        &acc + &(&(&p * rho.matrix()) * &p)
    });
    Ok(DensityMatrix::new_unchecked(out))
}

/// `S(ρ‖Φ(ρ)) = S(Φ(ρ)) − S(ρ)` for the rank-one measurement with the given
/// orthonormal basis vectors.
pub fn relative_entropy_to_dephased(rho: &DensityMatrix, basis: &[&[C64]]) -> Result<f64> {
    if basis.len() != rho.dim() || basis.iter().any(|b| b.len() != rho.dim()) {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: basis.len() });
    }
    let probs = basis.iter().map(|b| rho.matrix().expectation(b).re);
    Ok((shannon_entropy(probs) - von_neumann_entropy(rho)).max(0.0))
}

/// Precomputed pieces of the global-discord objective for one state.
#[derive(Clone, Debug)]
pub struct GqdObjective {
    rho: DensityMatrix,
    entropy: f64,
    reduced: [DensityMatrix; 3],
    reduced_entropy: [f64; 3],
}

impl GqdObjective {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 8 {
            return Err(Error::DimensionMismatch { expected: 8, got: rho.dim() });
        }
        let reduced = [partial_trace(rho, 1)?, partial_trace(rho, 2)?, partial_trace(rho, 3)?];
        let reduced_entropy = [0, 1, 2].map(|k| von_neumann_entropy(&reduced[k]));
        Ok(Self { rho: rho.clone(), entropy: von_neumann_entropy(rho), reduced, reduced_entropy })
    }

    pub fn state_entropy(&self) -> f64 {
        self.entropy
    }

    /// `S(ρ‖Φ(ρ))`
    pub fn global_term(&self, a: &MeasurementAngles) -> f64 {
        let probs = product_basis(a).into_iter().map(|v| self.rho.matrix().expectation(&v).re);
        shannon_entropy(probs) - self.entropy
    }

    /// `S(ρ_j‖Φ_j(ρ_j))` for `j` in 0..3.
    pub fn local_term(&self, a: &MeasurementAngles, j: usize) -> f64 {
        let probs = measurement_basis(a.theta[j], a.phi[j]).map(|v| self.reduced[j].matrix().expectation(&v).re);
        shannon_entropy(probs) - self.reduced_entropy[j]
    }

    pub fn value(&self, a: &MeasurementAngles) -> f64 {
        self.global_term(a) - (0..3).map(|j| self.local_term(a, j)).sum::<f64>()
    }

    fn value_unbounded(&self, x: &[f64]) -> f64 {
        self.value(&MeasurementAngles::from_unbounded(x))
    }
}

fn xlog2x(x: f64) -> Result<f64> {
    if x < -1e-12 {
        return Err(Error::NegativeLogArgument(x));
    }
    Ok(if x <= ZERO_CLAMP { 0.0 } else { x * x.log2() })
}

/// Entropy of the σz-dephased thermal state from its block entries.
pub fn closed_form_dephased_entropy(e: &ClosedFormElements) -> Result<f64> {
    Ok(-(xlog2x(e.rho11)? + xlog2x(e.rho88)? + 3.0 * xlog2x(e.rho22)? + 3.0 * xlog2x(e.rho44)?))
}

/// Entropy of a block-structured thermal state from its eigenvalues
/// `ρ22−ρ23` (×2), `ρ22+2ρ23`, `ρ44−ρ46` (×2), `ρ44+2ρ46`, `ρ11`, `ρ88`.
pub fn closed_form_entropy(e: &ClosedFormElements) -> Result<f64> {
    Ok(-(xlog2x(e.rho11)?
        + xlog2x(e.rho88)?
        + 2.0 * xlog2x(e.rho22 - e.rho23)?
        + xlog2x(e.rho22 + 2.0 * e.rho23)?
        + 2.0 * xlog2x(e.rho44 - e.rho46)?
        + xlog2x(e.rho44 + 2.0 * e.rho46)?))
}

/// Global discord of a block-structured thermal state measured in the σz
/// basis (bits).
pub fn gqd_closed_form(e: &ClosedFormElements) -> Result<f64> {
    Ok(-3.0 * xlog2x(e.rho22)? - 3.0 * xlog2x(e.rho44)?
        + 2.0 * xlog2x(e.rho22 - e.rho23)?
        + xlog2x(e.rho22 + 2.0 * e.rho23)?
        + 2.0 * xlog2x(e.rho44 - e.rho46)?
        + xlog2x(e.rho44 + 2.0 * e.rho46)?)
}

/// Search strategy for [`gqd_minimize`].
#[derive(Clone, Copy, Debug)]
pub struct GqdSettings {
    /// Symmetric warm-start grid (θ₁=θ₂=θ₃, φ₁=φ₂=φ₃).
    pub symmetric_theta: usize,
    pub symmetric_phi: usize,
    /// Per-qubit resolution of the full asymmetric grid.
    pub coarse_theta: usize,
    pub coarse_phi: usize,
    /// Best grid points refined from each grid.
    pub refine_best: usize,
    pub random_restarts: usize,
    pub seed: u64,
    pub local: NelderMead,
}

impl Default for GqdSettings {
    fn default() -> Self {
        Self {
            symmetric_theta: 9,
            symmetric_phi: 8,
            coarse_theta: 4,
            coarse_phi: 4,
            refine_best: 4,
            random_restarts: 16,
            seed: 0x5eed_d15c,
            local: NelderMead { initial_step: 0.4, f_tol: 1e-10, x_tol: 1e-7, max_evals: 20_000 },
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiscordResult {
    /// Minimized objective (bits), clamped at zero.
    pub value: f64,
    pub minimizer: MeasurementAngles,
    /// Objective evaluated at the σz basis.
    pub sigma_z_value: f64,
    /// Closed-form σz value when the state has the thermal block structure.
    pub closed_form_value: Option<f64>,
    /// `value − closed_form_value` (or `value − sigma_z_value`).
    pub agreement_gap: f64,
    /// Whether the local refinement that produced the minimum converged.
    pub converged: bool,
}

fn grid(n: usize, span: f64) -> Vec<f64> {
    (0..n).map(|i| span * i as f64 / n as f64).collect()
}

fn best_k(mut points: Vec<(f64, Vec<f64>)>, k: usize) -> Vec<(f64, Vec<f64>)> {
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    points.truncate(k);
    points
}

/// Minimizes the global-discord objective over all six measurement angles.
pub fn gqd_minimize(rho: &DensityMatrix, settings: &GqdSettings) -> Result<DiscordResult> {
    let objective = GqdObjective::new(rho)?;
    let sigma_z_value = objective.value(&MeasurementAngles::sigma_z());

    let thetas = grid(settings.symmetric_theta, PI);
    let phis = grid(settings.symmetric_phi, TAU);
    let symmetric: Vec<(f64, Vec<f64>)> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| vec![t, p, t, p, t, p]))
        .map(|x| (objective.value_unbounded(&x), x))
        .collect();

    let coarse_t = grid(settings.coarse_theta, PI);
    let coarse_p = grid(settings.coarse_phi, TAU);
    let local: Vec<(f64, f64)> =
        coarse_t.iter().flat_map(|&t| coarse_p.iter().map(move |&p| (t, p))).collect();
    let mut asymmetric = Vec::with_capacity(local.len().pow(3));
    for a in &local {
        for b in &local {
            for c in &local {
                let x = vec![a.0, a.1, b.0, b.1, c.0, c.1];
                asymmetric.push((objective.value_unbounded(&x), x));
            }
        }
    }

    let mut best: (f64, Vec<f64>, bool) = (sigma_z_value, vec![0.0; 6], true);
    for (v, x) in symmetric.iter().chain(asymmetric.iter()) {
        if *v < best.0 {
            best = (*v, x.clone(), false);
        }
    }

    let mut starts: Vec<Vec<f64>> = vec![vec![0.0; 6]];
    starts.extend(best_k(symmetric, settings.refine_best).into_iter().map(|p| p.1));
    starts.extend(best_k(asymmetric, settings.refine_best).into_iter().map(|p| p.1));
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    for _ in 0..settings.random_restarts {
        starts.push((0..3).flat_map(|_| [rng.random_range(0.0..PI), rng.random_range(0.0..TAU)]).collect());
    }

    for x0 in &starts {
        let m = settings.local.minimize(|x| objective.value_unbounded(x), x0);
        if m.value < best.0 {
            best = (m.value, m.x, m.converged);
        }
    }

    let minimizer = MeasurementAngles::from_unbounded(&best.1);
    let value = best.0.max(0.0);
    let closed_form_value = validate_blocks(rho).ok().map(|e| gqd_closed_form(&e)).transpose()?;
    let reference = closed_form_value.unwrap_or(sigma_z_value);
    Ok(DiscordResult {
        value,
        minimizer,
        sigma_z_value,
        closed_form_value,
        agreement_gap: value - reference,
        converged: best.2,
    })
}

/// Which qubit of a two-qubit state is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasuredSide {
    A,
    B,
}

/// Classical correlation `S(ρ_U) − Σ_k p_k S(ρ_U|k)` obtained by measuring
/// `side` along the Bloch direction `(θ, φ)`; `U` is the other qubit.
pub fn classical_correlation(rho2: &DensityMatrix, side: MeasuredSide, theta: f64, phi: f64) -> Result<f64> {
    if rho2.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho2.dim() });
    }
    let unmeasured = partial_trace_two_qubit(rho2, if side == MeasuredSide::B { 1 } else { 2 })?;
    let mut conditional = 0.0;
    for v in measurement_basis(theta, phi) {
        // ⟨v|_M ρ |v⟩_M as a 2×2 operator on the unmeasured qubit.
        let block = ComplexMatrix::from_fn(2, |u1, u2| {
            let mut acc = C64::new(0.0, 0.0);
            for m1 in 0..2 {
                for m2 in 0..2 {
                    let (i, j) = match side {
                        MeasuredSide::B => (2 * u1 + m1, 2 * u2 + m2),
                        MeasuredSide::A => (2 * m1 + u1, 2 * m2 + u2),
                    };
                    acc += v[m1].conj() * rho2.get(i, j) * v[m2];
                }
            }
            acc
        });
        let p = block.trace().re;
        if p < ZERO_CLAMP {
            continue;
        }
        conditional += p * von_neumann_entropy(&DensityMatrix::new_unchecked(block.scale(1.0 / p)));
    }
    Ok(von_neumann_entropy(&unmeasured) - conditional)
}

/// `D = I(ρ) − max_Π [S(ρ_U) − Σ_k p_k S(ρ_U|k)]` for a two-qubit state.
pub fn bipartite_discord(rho2: &DensityMatrix, side: MeasuredSide) -> Result<f64> {
    let a = partial_trace_two_qubit(rho2, 1)?;
    let b = partial_trace_two_qubit(rho2, 2)?;
    let mutual = von_neumann_entropy(&a) + von_neumann_entropy(&b) - von_neumann_entropy(rho2);

    let neg = |x: &[f64]| -> f64 { -classical_correlation(rho2, side, x[0], x[1]).unwrap_or(f64::NEG_INFINITY) };
    let mut candidates: Vec<(f64, Vec<f64>)> = grid(9, PI)
        .into_iter()
        .flat_map(|t| grid(8, TAU).into_iter().map(move |p| vec![t, p]))
        .map(|x| (neg(&x), x))
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = candidates[0].0;
    let nm = NelderMead { initial_step: 0.3, ..Default::default() };
    for (_, x0) in candidates.iter().take(4) {
        best = best.min(nm.minimize(neg, x0).value);
    }
    Ok((mutual + best).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_hamiltonian, ModelParams};
    use crate::state::relative_entropy;
    use crate::thermal::gibbs_state;

    fn thermal(l: f64, o: f64, t: f64) -> DensityMatrix {
        let h = build_hamiltonian(&ModelParams::new(0.0, o, 0.18, l).unwrap()).unwrap();
        gibbs_state(&h, t).unwrap()
    }

    #[test]
    fn projector_cases() {
        let (p1, p2) = local_projectors(&MeasurementAngles::sigma_z(), 1).unwrap();
        assert!(p1.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0])) < 1e-15);
        assert!(p2.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0])) < 1e-15);

        let x = MeasurementAngles::symmetric(PI / 2.0, 0.0);
        let (p1, p2) = local_projectors(&x, 2).unwrap();
        let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let minus = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, 0.5]]);
        assert!(p1.max_abs_diff(&plus) < 1e-15 && p2.max_abs_diff(&minus) < 1e-15);

        let a = MeasurementAngles::new([0.3, 1.2, 2.9], [0.1, 4.0, 6.0]).unwrap();
        for site in 1..=3 {
            let (p1, p2) = local_projectors(&a, site).unwrap();
            let (t, f) = (a.theta[site - 1], a.phi[site - 1]);
            let (s, c) = (t / 2.0).sin_cos();
            assert!((p1.get(0, 1) - C64::from_polar(c * s, f)).norm() < 1e-15);
            assert!((p1.get(1, 0) - C64::from_polar(c * s, -f)).norm() < 1e-15);
            assert!((&p1 * &p1).max_abs_diff(&p1) < 1e-12);
            assert!((&p1 + &p2).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
            assert!((&p1 * &p2).max_abs_diff(&ComplexMatrix::zeros(2)) < 1e-15);
        }
        assert!(local_projectors(&a, 4).is_err());
        assert!(MeasurementAngles::new([PI, 0.0, 0.0], [0.0; 3]).is_err());
    }

    #[test]
    fn angle_canonicalization() {
        let a = MeasurementAngles::from_unbounded(&[PI + 0.2, -0.1, 0.5, 7.0, -3.0, 0.0]);
        assert!((a.theta[0] - 0.2).abs() < 1e-12);
        assert!((a.phi[0] - (TAU - 0.1)).abs() < 1e-12);
        assert!(MeasurementAngles::new(a.theta, a.phi).is_ok());
    }

    #[test]
    fn dephasing_fixed_points() {
        let diag = DensityMatrix::from_diagonal(&[0.1, 0.2, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1]).unwrap();
        let out = dephasing_channel(&diag, &MeasurementAngles::sigma_z()).unwrap();
        assert!(out.matrix().max_abs_diff(diag.matrix()) < 1e-15);
        let a = MeasurementAngles::new([0.4, 1.1, 2.0], [0.3, 2.2, 5.0]).unwrap();
        let mixed = DensityMatrix::maximally_mixed(8);
        assert!(dephasing_channel(&mixed, &a).unwrap().matrix().max_abs_diff(mixed.matrix()) < 1e-15);
        let rho = thermal(5.0, 2.5, 4.0);
        let out = dephasing_channel(&rho, &a).unwrap();
        assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_identity_matches_general_formula() {
        let rho = thermal(5.0, 0.0, 10.0);
        for a in [MeasurementAngles::sigma_z(), MeasurementAngles::new([0.4, 1.1, 2.0], [0.3, 2.2, 5.0]).unwrap()] {
            let phi = DensityMatrix::new(dephasing_channel(&rho, &a).unwrap().matrix().clone()).unwrap();
            let general = relative_entropy(&rho, &phi).unwrap();
            let basis = product_basis(&a);
            let refs: Vec<&[C64]> = basis.iter().map(|v| v.as_slice()).collect();
            let identity = relative_entropy_to_dephased(&rho, &refs).unwrap();
            assert!((general - identity).abs() < 1e-10, "{general} vs {identity}");
            let objective = GqdObjective::new(&rho).unwrap();
            assert!((objective.global_term(&a) - identity).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_z_local_terms_vanish() {
        let rho = thermal(10.0, 2.5, 5.0);
        let objective = GqdObjective::new(&rho).unwrap();
        for j in 0..3 {
            assert!(objective.local_term(&MeasurementAngles::sigma_z(), j).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_entropies() {
        let rho = thermal(5.0, 2.5, 5.0);
        let e = validate_blocks(&rho).unwrap();
        assert!((closed_form_entropy(&e).unwrap() - von_neumann_entropy(&rho)).abs() < 1e-9);
        let dephased = dephasing_channel(&rho, &MeasurementAngles::sigma_z()).unwrap();
        assert!((closed_form_dephased_entropy(&e).unwrap() - von_neumann_entropy(&dephased)).abs() < 1e-9);
        let objective = GqdObjective::new(&rho).unwrap();
        assert!((gqd_closed_form(&e).unwrap() - objective.value(&MeasurementAngles::sigma_z())).abs() < 1e-10);
    }

    #[test]
    fn closed_form_zero_without_coherence() {
        let e = ClosedFormElements { rho11: 0.1, rho22: 0.1, rho23: 0.0, rho44: 0.2, rho46: 0.0, rho88: 0.0 };
        assert!(gqd_closed_form(&e).unwrap().abs() < 1e-15);
        let bad = ClosedFormElements { rho23: 0.2, ..e };
        assert!(matches!(gqd_closed_form(&bad), Err(Error::NegativeLogArgument(_))));
    }

    #[test]
    fn minimize_classical_and_mixed() {
        let settings = GqdSettings::default();
        let r = gqd_minimize(&thermal(0.0, 2.5, 5.0), &settings).unwrap();
        assert!(r.value.abs() < 1e-9 && r.agreement_gap.abs() < 1e-9);
        let r = gqd_minimize(&DensityMatrix::maximally_mixed(8), &settings).unwrap();
        assert!(r.value.abs() < 1e-9);
    }

    #[test]
    fn minimum_never_exceeds_sigma_z() {
        let r = gqd_minimize(&thermal(5.0, 0.0, 20.0), &GqdSettings::default()).unwrap();
        assert!(r.value <= r.sigma_z_value + 1e-9);
        assert!(r.closed_form_value.is_some());
    }

    #[test]
    fn bipartite_zero_cases() {
        let a = DensityMatrix::new(ComplexMatrix::from_real_rows(&[&[0.7, 0.2], &[0.2, 0.3]])).unwrap();
        let b = DensityMatrix::new(ComplexMatrix::from_real_rows(&[&[0.4, -0.1], &[-0.1, 0.6]])).unwrap();
        let product = a.tensor(&b);
        assert!(bipartite_discord(&product, MeasuredSide::B).unwrap() < 1e-9);
        assert!(bipartite_discord(&product, MeasuredSide::A).unwrap() < 1e-9);
        let classical = DensityMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(bipartite_discord(&classical, MeasuredSide::B).unwrap() < 1e-9);
    }

    #[test]
    fn bell_state_discord_is_one_bit() {
        let s = 0.5f64.sqrt();
        let bell = DensityMatrix::pure(&[C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)])
            .unwrap();
        assert!((bipartite_discord(&bell, MeasuredSide::B).unwrap() - 1.0).abs() < 1e-8);
    }
}
