// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Wigner-type inequality for kaons at `t = 0` and the bounds it puts on CP violation.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::meson::{Basis, MesonParams, QuasiSpinState};
use crate::pair::{joint_probability, MeasurementSpec, Outcome};

/// Measured leptonic charge asymmetry of `K_L` decays.
pub const DELTA_EXPERIMENTAL: f64 = 3.27e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WignerKaonReport {
    pub p_ks_k0bar: f64,
    pub p_ks_k1: f64,
    pub p_k1_k0bar: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub violated: bool,
    /// Phase of the `K₁`-like state `(K⁰ − e^{iφ}K̄⁰)/√2` that was used.
    pub phi: f64,
}

fn k1_with_phase(phi: f64) -> QuasiSpinState {
    QuasiSpinState::new(
        Basis::Strangeness,
        [
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            -Complex64::from_polar(FRAC_1_SQRT_2, phi),
        ],
    )
}

fn yes_yes_at_origin(
    left: QuasiSpinState,
    right: QuasiSpinState,
    params: &MesonParams,
) -> Result<f64> {
    joint_probability(
        &MeasurementSpec::left(left, 0.0, Outcome::Yes),
        &MeasurementSpec::right(right, 0.0, Outcome::Yes),
        params,
    )
}

fn wigner_with_phase(params: &MesonParams, phi: f64) -> Result<WignerKaonReport> {
    let k1 = k1_with_phase(phi);
    let p_ks_k0bar = yes_yes_at_origin(QuasiSpinState::ks(), QuasiSpinState::k0bar(), params)?;
    let p_ks_k1 = yes_yes_at_origin(QuasiSpinState::ks(), k1, params)?;
    let p_k1_k0bar = yes_yes_at_origin(k1, QuasiSpinState::k0bar(), params)?;
    let rhs = p_ks_k1 + p_k1_k0bar;
    Ok(WignerKaonReport {
        p_ks_k0bar,
        p_ks_k1,
        p_k1_k0bar,
        lhs: p_ks_k0bar,
        rhs,
        violated: p_ks_k0bar > rhs + 1e-12,
        phi,
    })
}

/// `P(K_S,K̄⁰) ≤ P(K_S,K₁) + P(K₁,K̄⁰)` with the CP eigenstate `K₁`.
///
/// Holds exactly when `Re ε ≤ |ε|²`.
pub fn wigner_kaon(params: &MesonParams) -> Result<WignerKaonReport> {
    wigner_with_phase(params, 0.0)
}

/// Same inequality with the middle state `(K⁰ − e^{iφ}K̄⁰)/√2` at the phase
/// that makes the right-hand side smallest, `φ = arg(q/p)`.
///
/// The phase choice of `K̄⁰` then drops out and the inequality reduces to `|p| ≤ |q|`.
pub fn wigner_kaon_optimized(params: &MesonParams) -> Result<WignerKaonReport> {
    wigner_with_phase(params, (params.q / params.p).arg())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpBoundsReport {
    pub p: Complex64,
    pub q: Complex64,
    pub abs_p: f64,
    pub abs_q: f64,
    /// `(|p|² − |q|²)/(|p|² + |q|²)`.
    pub delta: f64,
    pub delta_reference: f64,
    /// `|p| ≤ |q|`, i.e. `δ ≤ 0`.
    pub delta_le_zero: bool,
    /// The same bound with `K⁰` and `K̄⁰` exchanged: `δ ≥ 0`.
    pub delta_ge_zero: bool,
    /// Both at once: `δ = 0`.
    pub delta_zero: bool,
    pub wigner: WignerKaonReport,
}

impl CpBoundsReport {
    /// True if any of the three local-realistic constraints fails.
    pub fn contradicts_local_realism(&self) -> bool {
        !(self.delta_le_zero && self.delta_ge_zero && self.delta_zero)
    }
}

pub fn cp_bounds(params: &MesonParams) -> Result<CpBoundsReport> {
    let p2 = params.p.norm_sqr();
    let q2 = params.q.norm_sqr();
    let delta = (p2 - q2) / (p2 + q2);
    Ok(CpBoundsReport {
        p: params.p,
        q: params.q,
        abs_p: p2.sqrt(),
        abs_q: q2.sqrt(),
        delta,
        delta_reference: DELTA_EXPERIMENTAL,
        delta_le_zero: delta <= 0.0,
        delta_ge_zero: delta >= 0.0,
        delta_zero: delta == 0.0,
        wigner: wigner_kaon(params)?,
    })
}
