// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Like- and unlike-strangeness probabilities and their asymmetry.
//!
//! The decoherence factor always uses the time of the first measured meson,
//! `min{t_l, t_r}`.

use crate::error::{ensure_time, KaonError, Result};
use crate::meson::{MesonParams, Strangeness};

use super::lindblad::ensure_lambda;

fn ensure_zeta(zeta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&zeta) {
        return Err(KaonError::Domain(format!(
            "ζ must lie in [0, 1], got {zeta}"
        )));
    }
    Ok(())
}

/// `⅛{e^{−Γ_S t_l−Γ_L t_r} + e^{−Γ_L t_l−Γ_S t_r} ∓ 2 damping·cos(ΔmΔt) e^{−Γ(t_l+t_r)}}`,
/// minus for like strangeness.
fn prob_damped(
    s_l: Strangeness,
    t_l: f64,
    s_r: Strangeness,
    t_r: f64,
    damping: f64,
    params: &MesonParams,
) -> Result<f64> {
    ensure_time("t_l", t_l)?;
    ensure_time("t_r", t_r)?;
    let (gs, gl) = (params.gamma_s, params.gamma_l);
    let decay = (-gs * t_l - gl * t_r).exp() + (-gl * t_l - gs * t_r).exp();
    let interference = 2.0
        * damping
        * (params.delta_m * (t_l - t_r)).cos()
        * (-params.gamma_bar * (t_l + t_r)).exp();
    let sign = if s_l == s_r { -1.0 } else { 1.0 };
    Ok(0.125 * (decay + sign * interference))
}

pub fn prob_lambda(
    s_l: Strangeness,
    t_l: f64,
    s_r: Strangeness,
    t_r: f64,
    lambda: f64,
    params: &MesonParams,
) -> Result<f64> {
    ensure_lambda(lambda)?;
    prob_damped(s_l, t_l, s_r, t_r, (-lambda * t_l.min(t_r)).exp(), params)
}

/// Interference term scaled by `1 − ζ`.
pub fn prob_zeta(
    s_l: Strangeness,
    t_l: f64,
    s_r: Strangeness,
    t_r: f64,
    zeta: f64,
    params: &MesonParams,
) -> Result<f64> {
    ensure_zeta(zeta)?;
    prob_damped(s_l, t_l, s_r, t_r, 1.0 - zeta, params)
}

/// `cos(ΔmΔt)/cosh(½ΔΓΔt)`.
pub fn asymmetry_qm(t_l: f64, t_r: f64, params: &MesonParams) -> Result<f64> {
    ensure_time("t_l", t_l)?;
    ensure_time("t_r", t_r)?;
    let dt = t_l - t_r;
    Ok((params.delta_m * dt).cos() / (0.5 * params.delta_gamma() * dt).cosh())
}

pub fn asymmetry_lambda(t_l: f64, t_r: f64, lambda: f64, params: &MesonParams) -> Result<f64> {
    ensure_lambda(lambda)?;
    Ok(asymmetry_qm(t_l, t_r, params)? * (-lambda * t_l.min(t_r)).exp())
}

pub fn asymmetry_zeta(t_l: f64, t_r: f64, zeta: f64, params: &MesonParams) -> Result<f64> {
    ensure_zeta(zeta)?;
    Ok(asymmetry_qm(t_l, t_r, params)? * (1.0 - zeta))
}

/// `1 − e^{−λ min{t_l,t_r}}`.
pub fn zeta_of_lambda(t_l: f64, t_r: f64, lambda: f64) -> Result<f64> {
    ensure_lambda(lambda)?;
    ensure_time("t_l", t_l)?;
    ensure_time("t_r", t_r)?;
    Ok(-(-lambda * t_l.min(t_r)).exp_m1())
}
