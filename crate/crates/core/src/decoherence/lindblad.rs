// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form solutions of the master equation
//! `dρ/dt = −i(Hρ − ρH†) − λ(P_S ρ P_L + P_L ρ P_S)`.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_time, KaonError, Result};
use crate::meson::MesonParams;

pub(crate) fn ensure_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(KaonError::Domain(format!(
            "decoherence parameter must be finite and >= 0, got {lambda}"
        )));
    }
    Ok(())
}

pub(crate) fn ensure_cp_conserving(params: &MesonParams) -> Result<()> {
    if !params.is_cp_conserving() {
        return Err(KaonError::InvalidParameter(format!(
            "decoherence model assumes ε = 0, got ε = {}",
            params.epsilon
        )));
    }
    Ok(())
}

/// Single-meson evolution of a mass-basis density matrix (index 0 = `K_S`, 1 = `K_L`).
pub fn evolve_single(
    rho0: &Matrix2<Complex64>,
    t: f64,
    lambda: f64,
    params: &MesonParams,
) -> Result<Matrix2<Complex64>> {
    ensure_lambda(lambda)?;
    ensure_time("t", t)?;
    ensure_cp_conserving(params)?;
    let ls =
        rho0[(1, 0)] * Complex64::new(-(params.gamma_bar + lambda) * t, -params.delta_m * t).exp();
    Ok(Matrix2::new(
        rho0[(0, 0)] * (-params.gamma_s * t).exp(),
        ls.conj(),
        ls,
        rho0[(1, 1)] * (-params.gamma_l * t).exp(),
    ))
}

/// Two-meson density matrix over `{|K_S K_S⟩, |e₁⟩, |e₂⟩, |K_L K_L⟩}`,
/// with `|e₁⟩ = |K_S⟩_l|K_L⟩_r` and `|e₂⟩ = |K_L⟩_l|K_S⟩_r`.
///
/// Read as two qubits with `K_S = ⇑`, this is the computational order
/// `|⇑⇑⟩, |⇑⇓⟩, |⇓⇑⟩, |⇓⇓⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDensityMatrix {
    pub rho: Matrix4<Complex64>,
    pub time: f64,
    pub lambda: f64,
}

impl PairDensityMatrix {
    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.rho - self.rho.adjoint())
            .iter()
            .all(|c| c.norm() <= tol)
    }
}

/// The singlet `|ψ⁻⟩ = (|e₁⟩ − |e₂⟩)/√2` evolved to equal times `t` on both sides.
///
/// `ρ(t) = ½e^{−2Γt}{|e₁⟩⟨e₁| + |e₂⟩⟨e₂| − e^{−λt}(|e₁⟩⟨e₂| + |e₂⟩⟨e₁|)}`.
pub fn evolve_pair(t: f64, lambda: f64, params: &MesonParams) -> Result<PairDensityMatrix> {
    ensure_lambda(lambda)?;
    ensure_time("t", t)?;
    ensure_cp_conserving(params)?;
    let diag = 0.5 * (-2.0 * params.gamma_bar * t).exp();
    let off = -diag * (-lambda * t).exp();
    let mut rho = Matrix4::<Complex64>::zeros();
    rho[(1, 1)] = Complex64::new(diag, 0.0);
    rho[(2, 2)] = Complex64::new(diag, 0.0);
    rho[(1, 2)] = Complex64::new(off, 0.0);
    rho[(2, 1)] = Complex64::new(off, 0.0);
    Ok(PairDensityMatrix {
        rho,
        time: t,
        lambda,
    })
}
