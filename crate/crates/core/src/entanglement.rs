// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Entanglement and separability of the decohering meson pair.
//!
//! Two-qubit matrices use the computational order `|⇑⇑⟩, |⇑⇓⟩, |⇓⇑⟩, |⇓⇓⟩`
//! with `⇑ = K_S` and `⇓ = K_L`, which is the order of
//! [`PairDensityMatrix`]. The spin flip `σ_y ⊗ σ_y` is built in the same
//! order, so the concurrence does not depend on how the basis is listed.
//! Entropies use `log₂`.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decoherence::{evolve_pair, zeta_of_lambda, PairDensityMatrix};
use crate::error::{ensure_time, KaonError, Result};
use crate::meson::MesonParams;
use crate::pair::Side;

type C = Complex64;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGEN_TOL: f64 = 1e-10;
const BELL_TOL: f64 = 1e-10;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Unit-trace two-meson state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedState {
    pub rho: Matrix4<C>,
    pub t: f64,
    pub lambda: f64,
}

impl NormalizedState {
    /// Validates an arbitrary two-qubit density matrix.
    pub fn from_matrix(rho: Matrix4<C>) -> Result<Self> {
        if (rho - rho.adjoint())
            .iter()
            .any(|z| z.norm() > HERMITIAN_TOL)
        {
            return Err(KaonError::InvalidParameter(
                "density matrix is not Hermitian".into(),
            ));
        }
        let tr = rho.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(KaonError::InvalidParameter(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let ev = hermitian_eigenvalues(&rho);
        if ev
            .iter()
            .any(|&e| !(-EIGEN_TOL..=1.0 + EIGEN_TOL).contains(&e))
        {
            return Err(KaonError::InvalidParameter(format!(
                "density matrix eigenvalues {ev:?} are outside [0, 1]"
            )));
        }
        Ok(NormalizedState {
            rho,
            t: f64::NAN,
            lambda: f64::NAN,
        })
    }
}

/// `ρ/Tr ρ`, compensating for the decays.
pub fn normalize(rho: &PairDensityMatrix) -> Result<NormalizedState> {
    let tr = rho.trace();
    if !(tr.is_finite() && tr > f64::MIN_POSITIVE) {
        return Err(KaonError::DegenerateState(format!(
            "cannot normalize a state with trace {tr}"
        )));
    }
    Ok(NormalizedState {
        rho: rho.rho.unscale(tr),
        t: rho.time,
        lambda: rho.lambda,
    })
}

/// The normalized model state at equal times `t` on both sides.
pub fn model_state(t: f64, lambda: f64) -> Result<NormalizedState> {
    normalize(&evolve_pair(t, lambda, &MesonParams::kaon_cp_conserving())?)
}

/// Eigenvalues in descending order.
fn hermitian_eigenvalues(m: &Matrix4<C>) -> [f64; 4] {
    let eig = m.symmetric_eigen();
    let mut ev: [f64; 4] = std::array::from_fn(|i| eig.eigenvalues[i]);
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

fn entropy_of(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

pub fn binary_entropy(p: f64) -> f64 {
    entropy_of(&[p, 1.0 - p])
}

fn bell_vectors() -> [Vector4<C>; 4] {
    let s = FRAC_1_SQRT_2;
    [
        Vector4::new(c(0.0), c(s), c(-s), c(0.0)),
        Vector4::new(c(0.0), c(s), c(s), c(0.0)),
        Vector4::new(c(s), c(0.0), c(0.0), c(-s)),
        Vector4::new(c(s), c(0.0), c(0.0), c(s)),
    ]
}

/// Weights of `ρ` on `ψ⁻, ψ⁺, φ⁻, φ⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellWeights {
    pub psi_minus: f64,
    pub psi_plus: f64,
    pub phi_minus: f64,
    pub phi_plus: f64,
}

impl BellWeights {
    pub fn to_array(self) -> [f64; 4] {
        [self.psi_minus, self.psi_plus, self.phi_minus, self.phi_plus]
    }
}

pub fn bell_weights(state: &NormalizedState) -> BellWeights {
    let w = bell_vectors().map(|v| (v.adjoint() * state.rho * v)[(0, 0)].re);
    BellWeights {
        psi_minus: w[0],
        psi_plus: w[1],
        phi_minus: w[2],
        phi_plus: w[3],
    }
}

pub fn is_bell_diagonal(state: &NormalizedState) -> bool {
    let w = bell_weights(state).to_array();
    let rebuilt = bell_vectors()
        .iter()
        .zip(w)
        .fold(Matrix4::<C>::zeros(), |acc, (v, wi)| {
            acc + v * v.adjoint() * c(wi)
        });
    (rebuilt - state.rho).iter().all(|z| z.norm() <= BELL_TOL)
}

/// `−Tr ρ log₂ ρ` from the eigenvalues of `ρ`.
pub fn entropy_eigen(state: &NormalizedState) -> f64 {
    entropy_of(&hermitian_eigenvalues(&state.rho))
}

/// `−Tr ρ log₂ ρ`; Bell-diagonal states use their Bell weights directly.
pub fn von_neumann_entropy(state: &NormalizedState) -> f64 {
    if is_bell_diagonal(state) {
        entropy_of(&bell_weights(state).to_array())
    } else {
        entropy_eigen(state)
    }
}

/// Partial trace over the other side.
pub fn reduced_density(state: &NormalizedState, side: Side) -> Matrix2<C> {
    let r = &state.rho;
    let mut out = Matrix2::<C>::zeros();
    for a in 0..2 {
        for b in 0..2 {
            out[(a, b)] = match side {
                Side::Left => r[(2 * a, 2 * b)] + r[(2 * a + 1, 2 * b + 1)],
                Side::Right => r[(a, b)] + r[(2 + a, 2 + b)],
            };
        }
    }
    out
}

pub fn reduced_entropy(state: &NormalizedState, side: Side) -> f64 {
    let eig = reduced_density(state, side).symmetric_eigen();
    entropy_of(eig.eigenvalues.as_slice())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityCheck {
    /// Descending.
    pub eigenvalues: [f64; 4],
    pub separable: bool,
}

impl SeparabilityCheck {
    fn from_eigenvalues(eigenvalues: [f64; 4]) -> Self {
        SeparabilityCheck {
            eigenvalues,
            separable: eigenvalues[3] >= -EIGEN_TOL,
        }
    }
}

/// Transpose on the right meson.
pub fn partial_transpose(rho: &Matrix4<C>) -> Matrix4<C> {
    Matrix4::from_fn(|row, col| {
        let (i, j) = (row / 2, row % 2);
        let (k, l) = (col / 2, col % 2);
        rho[(2 * i + l, 2 * k + j)]
    })
}

/// Peres–Horodecki test, exact for two qubits.
pub fn ppt_check(state: &NormalizedState) -> SeparabilityCheck {
    SeparabilityCheck::from_eigenvalues(hermitian_eigenvalues(&partial_transpose(&state.rho)))
}

/// Reduction criterion: separable states satisfy `1 ⊗ ρ_r − ρ ≥ 0`.
pub fn reduction_check(state: &NormalizedState) -> SeparabilityCheck {
    let r = reduced_density(state, Side::Right);
    let m = Matrix4::from_fn(|row, col| {
        let delta = if row / 2 == col / 2 {
            r[(row % 2, col % 2)]
        } else {
            c(0.0)
        };
        delta - state.rho[(row, col)]
    });
    SeparabilityCheck::from_eigenvalues(hermitian_eigenvalues(&m))
}

fn spin_flip() -> Matrix4<C> {
    let mut y = Matrix4::<C>::zeros();
    y[(0, 3)] = c(-1.0);
    y[(3, 0)] = c(-1.0);
    y[(1, 2)] = c(1.0);
    y[(2, 1)] = c(1.0);
    y
}

fn sqrt_psd(m: &Matrix4<C>) -> Matrix4<C> {
    let eig = m.symmetric_eigen();
    let scale = eig.eigenvalues.amax().max(f64::MIN_POSITIVE);
    let roots = eig.eigenvalues.map(|e| {
        if e > 1e-13 * scale {
            c(e.sqrt())
        } else {
            c(0.0)
        }
    });
    eig.eigenvectors * Matrix4::from_diagonal(&roots) * eig.eigenvectors.adjoint()
}

/// Wootters concurrence `max{0, λ₁ − λ₂ − λ₃ − λ₄}`.
///
/// The `λ_i` are the singular values of `√ρ·√ρ̃` with `ρ̃ = (σ_y⊗σ_y)ρ*(σ_y⊗σ_y)`,
/// equal to the square roots of the eigenvalues of `ρρ̃`.
pub fn concurrence(state: &NormalizedState) -> f64 {
    let y = spin_flip();
    let root = sqrt_psd(&state.rho);
    let root_tilde = y * root.conjugate() * y;
    let mut sv: Vec<f64> = (root * root_tilde)
        .singular_values()
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    (sv[0] - sv[1] - sv[2] - sv[3]).clamp(0.0, 1.0)
}

/// Largest overlap with a maximally entangled state, for Bell-diagonal input only.
pub fn fully_entangled_fraction(state: &NormalizedState) -> Result<f64> {
    if !is_bell_diagonal(state) {
        return Err(KaonError::UnsupportedInput(
            "fully entangled fraction is only implemented for Bell-diagonal states".into(),
        ));
    }
    Ok(bell_weights(state)
        .to_array()
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `H(½ + ½√(1 − C²))`.
pub fn eof_from_concurrence(concurrence: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&concurrence) {
        return Err(KaonError::InvalidParameter(format!(
            "concurrence must lie in [0, 1], got {concurrence}"
        )));
    }
    let cc = concurrence.clamp(0.0, 1.0);
    Ok(binary_entropy(0.5 + 0.5 * (1.0 - cc * cc).sqrt()))
}

pub fn entanglement_of_formation(state: &NormalizedState) -> Result<f64> {
    eof_from_concurrence(concurrence(state))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossReport {
    pub one_minus_c: f64,
    pub one_minus_e: f64,
    pub zeta: f64,
    /// `ζ/ln 2`, the first-order value of `1 − E`.
    pub linearized: f64,
}

/// Entanglement loss of the model state next to the decoherence `ζ(t) = 1 − e^{−λt}`.
pub fn loss_report(t: f64, lambda: f64) -> Result<LossReport> {
    let state = model_state(t, lambda)?;
    let cc = concurrence(&state);
    let zeta = zeta_of_lambda(t, t, lambda)?;
    Ok(LossReport {
        one_minus_c: 1.0 - cc,
        one_minus_e: 1.0 - eof_from_concurrence(cc)?,
        zeta,
        linearized: zeta / LN_2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub t: f64,
    pub lambda: f64,
    pub entropy: f64,
    pub reduced_entropy_l: f64,
    pub reduced_entropy_r: f64,
    pub concurrence: f64,
    pub fef: f64,
    pub eof: f64,
    pub zeta: f64,
}

impl MeasureReport {
    pub fn one_minus_eof(&self) -> f64 {
        1.0 - self.eof
    }
}

/// Every entanglement measure of the model state at `(t, λ)`.
pub fn measure_report(t: f64, lambda: f64) -> Result<MeasureReport> {
    let state = model_state(t, lambda)?;
    let cc = concurrence(&state);
    Ok(MeasureReport {
        t,
        lambda,
        entropy: von_neumann_entropy(&state),
        reduced_entropy_l: reduced_entropy(&state, Side::Left),
        reduced_entropy_r: reduced_entropy(&state, Side::Right),
        concurrence: cc,
        fef: fully_entangled_fraction(&state)?,
        eof: eof_from_concurrence(cc)?,
        zeta: zeta_of_lambda(t, t, lambda)?,
    })
}

/// Reports on `steps` evenly spaced times from `t_from` to `t_to` inclusive.
pub fn measures_sweep(
    lambda: f64,
    t_from: f64,
    t_to: f64,
    steps: usize,
) -> Result<Vec<MeasureReport>> {
    ensure_time("t_from", t_from)?;
    ensure_time("t_to", t_to)?;
    if t_to < t_from {
        return Err(KaonError::InvalidParameter(format!(
            "t_to ({t_to}) is before t_from ({t_from})"
        )));
    }
    if steps == 0 {
        return Err(KaonError::InvalidParameter(
            "steps must be at least 1".into(),
        ));
    }
    let h = if steps > 1 {
        (t_to - t_from) / (steps - 1) as f64
    } else {
        0.0
    };
    (0..steps)
        .into_par_iter()
        .map(|i| measure_report(t_from + i as f64 * h, lambda))
        .collect()
}
