// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Single-meson quasi-spin states.
//!
//! Phase convention: `CP|K⁰⟩ = −|K̄⁰⟩`, so that
//! `|K₁⁰⟩ = (|K⁰⟩ − |K̄⁰⟩)/√2` is CP-even and
//! `|K_S⟩ = (p|K⁰⟩ − q|K̄⁰⟩)/N`, `|K_L⟩ = (p|K⁰⟩ + q|K̄⁰⟩)/N`.
//! The strangeness basis is orthonormal; the mass basis is normalized but
//! not orthogonal once `Re ε ≠ 0`. Inner products and norms are therefore
//! always taken on strangeness components.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::params::MesonParams;
use crate::error::{KaonError, Result};

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// `(K⁰, K̄⁰)`
    Strangeness,
    /// `(K_S, K_L)`
    Mass,
    /// `(K₁⁰, K₂⁰)`
    Cp,
}

/// Two complex amplitudes with respect to a declared basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiSpinState {
    pub basis: Basis,
    pub amp: [Complex64; 2],
}

/// The six states with names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedState {
    K0,
    K0Bar,
    KS,
    KL,
    K1,
    K2,
}

impl NamedState {
    pub fn state(self) -> QuasiSpinState {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (basis, amp) = match self {
            NamedState::K0 => (Basis::Strangeness, [one, zero]),
            NamedState::K0Bar => (Basis::Strangeness, [zero, one]),
            NamedState::KS => (Basis::Mass, [one, zero]),
            NamedState::KL => (Basis::Mass, [zero, one]),
            NamedState::K1 => (Basis::Cp, [one, zero]),
            NamedState::K2 => (Basis::Cp, [zero, one]),
        };
        QuasiSpinState { basis, amp }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NamedState::K0 => "k0",
            NamedState::K0Bar => "k0bar",
            NamedState::KS => "ks",
            NamedState::KL => "kl",
            NamedState::K1 => "k1",
            NamedState::K2 => "k2",
        };
        f.write_str(s)
    }
}

impl FromStr for NamedState {
    type Err = KaonError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k0" => Ok(NamedState::K0),
            "k0bar" => Ok(NamedState::K0Bar),
            "ks" => Ok(NamedState::KS),
            "kl" => Ok(NamedState::KL),
            "k1" => Ok(NamedState::K1),
            "k2" => Ok(NamedState::K2),
            other => Err(KaonError::InvalidParameter(format!(
                "unknown quasi-spin state {other:?}"
            ))),
        }
    }
}

impl QuasiSpinState {
    pub fn new(basis: Basis, amp: [Complex64; 2]) -> Self {
        QuasiSpinState { basis, amp }
    }

    pub fn k0() -> Self {
        NamedState::K0.state()
    }

    pub fn k0bar() -> Self {
        NamedState::K0Bar.state()
    }

    pub fn ks() -> Self {
        NamedState::KS.state()
    }

    pub fn kl() -> Self {
        NamedState::KL.state()
    }

    pub fn k1() -> Self {
        NamedState::K1.state()
    }

    pub fn k2() -> Self {
        NamedState::K2.state()
    }

    /// Components along `(K⁰, K̄⁰)`.
    pub fn strangeness_components(&self, params: &MesonParams) -> [Complex64; 2] {
        let [a, b] = self.amp;
        match self.basis {
            Basis::Strangeness => [a, b],
            Basis::Mass => {
                let n = params.norm_n;
                [(a + b) * params.p / n, (b - a) * params.q / n]
            }
            Basis::Cp => [(a + b) * FRAC_1_SQRT_2, (b - a) * FRAC_1_SQRT_2],
        }
    }

    fn from_strangeness(s: [Complex64; 2], target: Basis, params: &MesonParams) -> Self {
        let [s0, s1] = s;
        let amp = match target {
            Basis::Strangeness => [s0, s1],
            Basis::Mass => {
                let half_n = 0.5 * params.norm_n;
                let u = s0 / params.p;
                let v = s1 / params.q;
                [(u - v) * half_n, (u + v) * half_n]
            }
            Basis::Cp => [(s0 - s1) * FRAC_1_SQRT_2, (s0 + s1) * FRAC_1_SQRT_2],
        };
        QuasiSpinState { basis: target, amp }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuasiSpinState, params: &MesonParams) -> Complex64 {
        let a = self.strangeness_components(params);
        let b = other.strangeness_components(params);
        a[0].conj() * b[0] + a[1].conj() * b[1]
    }

    pub fn norm_sqr(&self, params: &MesonParams) -> f64 {
        let s = self.strangeness_components(params);
        s[0].norm_sqr() + s[1].norm_sqr()
    }

    pub fn is_normalized(&self, params: &MesonParams) -> bool {
        (self.norm_sqr(params) - 1.0).abs() <= NORM_TOL
    }

    pub fn scale(mut self, c: Complex64) -> Self {
        self.amp = [self.amp[0] * c, self.amp[1] * c];
        self
    }
}

/// Re-expresses `state` in the `target` basis.
pub fn to_basis(state: &QuasiSpinState, target: Basis, params: &MesonParams) -> QuasiSpinState {
    if state.basis == target {
        return *state;
    }
    QuasiSpinState::from_strangeness(state.strangeness_components(params), target, params)
}
