// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Physical constants of a neutral-meson system.
//!
//! Internally every rate is measured in units of the short-lived width
//! `Γ_S` (so `gamma_s == 1`) and every time in units of `τ_S = 1/Γ_S`. The
//! mass difference enters only as the dimensionless product `Δm·τ_S`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KaonError, Result};

/// Reduced Planck constant in MeV·s (CODATA 2018).
pub const HBAR_MEV_S: f64 = 6.582_119_569e-22;

/// Short-lived kaon lifetime in seconds.
pub const KAON_TAU_S_SECONDS: f64 = 0.89e-10;
/// Long-lived kaon lifetime in seconds.
pub const KAON_TAU_L_SECONDS: f64 = 5.17e-8;
/// `Δm·τ_S` for neutral kaons.
pub const KAON_DELTA_M_TAU_S: f64 = 0.47;
/// `τ_L/τ_S` for neutral kaons, rounded from the two lifetimes above.
pub const KAON_TAU_RATIO: f64 = 581.0;
/// Default `|ε|`. The magnitude is an external input, not a derived quantity.
pub const DEFAULT_EPS_ABS: f64 = 2.23e-3;
/// Default phase of `ε` in degrees.
pub const DEFAULT_EPS_PHASE_DEG: f64 = 45.0;
/// `Δm/Γ` for `B⁰B̄⁰`.
pub const BMESON_X: f64 = 0.77;

/// Which meson system a parameter set describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemLabel {
    #[serde(rename = "kaon")]
    Kaon,
    B,
    D,
    Bs,
    #[serde(rename = "custom")]
    Custom,
}

impl fmt::Display for SystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SystemLabel::Kaon => "kaon",
            SystemLabel::B => "B",
            SystemLabel::D => "D",
            SystemLabel::Bs => "Bs",
            SystemLabel::Custom => "custom",
        };
        f.write_str(s)
    }
}

impl FromStr for SystemLabel {
    type Err = KaonError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kaon" | "K" => Ok(SystemLabel::Kaon),
            "B" => Ok(SystemLabel::B),
            "D" => Ok(SystemLabel::D),
            "Bs" => Ok(SystemLabel::Bs),
            "custom" => Ok(SystemLabel::Custom),
            other => Err(KaonError::InvalidParameter(format!(
                "unknown system label {other:?} (expected kaon, B, D, Bs or custom)"
            ))),
        }
    }
}

/// All constants of one meson system in internal units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MesonParams {
    /// `Δm = m_L − m_S` in units of `Γ_S`.
    pub delta_m: f64,
    pub gamma_s: f64,
    pub gamma_l: f64,
    /// `Γ = (Γ_S + Γ_L)/2`.
    pub gamma_bar: f64,
    /// `x = Δm/Γ`.
    pub x: f64,
    pub epsilon: Complex64,
    /// `p = 1 + ε`.
    pub p: Complex64,
    /// `q = 1 − ε`.
    pub q: Complex64,
    /// `N` with `N² = |p|² + |q|²`.
    pub norm_n: f64,
    pub label: SystemLabel,
}

/// Builds a parameter set from dimensionless inputs.
///
/// `Γ_S` is fixed to one, so `Γ_L = 1/(τ_L/τ_S)` and `Δm = Δm·τ_S`.
pub fn make_params(
    delta_m_tau_s: f64,
    tau_l_over_tau_s: f64,
    epsilon: Complex64,
) -> Result<MesonParams> {
    if !(delta_m_tau_s.is_finite() && delta_m_tau_s >= 0.0) {
        return Err(KaonError::InvalidParameter(format!(
            "delta_m_tau_s must be finite and >= 0, got {delta_m_tau_s}"
        )));
    }
    if !(tau_l_over_tau_s.is_finite() && tau_l_over_tau_s >= 1.0) {
        return Err(KaonError::InvalidParameter(format!(
            "tau_l_over_tau_s must be finite and >= 1, got {tau_l_over_tau_s}"
        )));
    }
    if !(epsilon.re.is_finite() && epsilon.im.is_finite()) {
        return Err(KaonError::InvalidParameter("epsilon must be finite".into()));
    }
    let gamma_s = 1.0;
    let gamma_l = 1.0 / tau_l_over_tau_s;
    let gamma_bar = 0.5 * (gamma_s + gamma_l);
    let p = Complex64::new(1.0, 0.0) + epsilon;
    let q = Complex64::new(1.0, 0.0) - epsilon;
    let norm_n = (p.norm_sqr() + q.norm_sqr()).sqrt();
    let label = if tau_l_over_tau_s == 1.0 {
        SystemLabel::B
    } else {
        SystemLabel::Kaon
    };
    Ok(MesonParams {
        delta_m: delta_m_tau_s,
        gamma_s,
        gamma_l,
        gamma_bar,
        x: delta_m_tau_s / gamma_bar,
        epsilon,
        p,
        q,
        norm_n,
        label,
    })
}

/// `ε` from modulus and phase in degrees.
pub fn epsilon_from_polar(abs: f64, phase_deg: f64) -> Complex64 {
    Complex64::from_polar(abs, phase_deg.to_radians())
}

impl MesonParams {
    /// Neutral kaons with the default `ε`.
    pub fn kaon() -> Self {
        make_params(
            KAON_DELTA_M_TAU_S,
            KAON_TAU_RATIO,
            epsilon_from_polar(DEFAULT_EPS_ABS, DEFAULT_EPS_PHASE_DEG),
        )
        .expect("kaon defaults are valid")
    }

    /// Neutral kaons with CP conserved (`ε = 0`).
    pub fn kaon_cp_conserving() -> Self {
        make_params(KAON_DELTA_M_TAU_S, KAON_TAU_RATIO, Complex64::new(0.0, 0.0))
            .expect("kaon defaults are valid")
    }

    /// Equal-width system (`Γ_L = Γ_S`) with the given `x`, CP conserved.
    pub fn bmeson(x: f64) -> Result<Self> {
        make_params(x, 1.0, Complex64::new(0.0, 0.0)).map(|p| p.with_label(SystemLabel::B))
    }

    /// Kaon widths with the mass difference rescaled so that `Δm/Γ = x`.
    pub fn kaon_with_x(x: f64) -> Result<Self> {
        let gamma_bar = 0.5 * (1.0 + 1.0 / KAON_TAU_RATIO);
        make_params(x * gamma_bar, KAON_TAU_RATIO, Complex64::new(0.0, 0.0))
            .map(|p| p.with_label(SystemLabel::Custom))
    }

    pub fn with_label(mut self, label: SystemLabel) -> Self {
        self.label = label;
        self
    }

    /// Same system with a different `ε`.
    pub fn with_epsilon(self, epsilon: Complex64) -> Result<Self> {
        make_params(self.delta_m, 1.0 / self.gamma_l, epsilon).map(|p| p.with_label(self.label))
    }

    /// `ΔΓ = Γ_L − Γ_S`.
    pub fn delta_gamma(&self) -> f64 {
        self.gamma_l - self.gamma_s
    }

    pub fn is_cp_conserving(&self) -> bool {
        self.epsilon.re == 0.0 && self.epsilon.im == 0.0
    }

    pub fn has_equal_widths(&self) -> bool {
        (self.gamma_l - self.gamma_s).abs() <= 1e-12 * self.gamma_s
    }

    /// `τ_L/τ_S`.
    pub fn tau_ratio(&self) -> f64 {
        self.gamma_s / self.gamma_l
    }
}

/// `ħ/τ_S` in MeV, i.e. the value of `Γ_S` in physical units.
pub fn gamma_s_mev(tau_s_seconds: f64) -> f64 {
    HBAR_MEV_S / tau_s_seconds
}

/// Converts a rate in MeV into units of `Γ_S`.
pub fn mev_to_internal_rate(rate_mev: f64, tau_s_seconds: f64) -> f64 {
    rate_mev / gamma_s_mev(tau_s_seconds)
}

/// Converts a rate in units of `Γ_S` into MeV.
pub fn internal_rate_to_mev(rate: f64, tau_s_seconds: f64) -> f64 {
    rate * gamma_s_mev(tau_s_seconds)
}

/// Converts a time in units of `τ_S` into seconds.
pub fn internal_time_to_seconds(t: f64, tau_s_seconds: f64) -> f64 {
    t * tau_s_seconds
}
