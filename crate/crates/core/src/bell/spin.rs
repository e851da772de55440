// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Spin-½ singlet: CHSH and Wigner inequalities.

use serde::{Deserialize, Serialize};

/// CHSH combination for the singlet, where `E(n,m) = −cos φ_nm`.
pub fn chsh_spin(phi_nm: f64, phi_nm2: f64, phi_n2m2: f64, phi_n2m: f64) -> f64 {
    (phi_nm.cos() - phi_nm2.cos()).abs() + (phi_n2m2.cos() + phi_n2m.cos()).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WignerVerdict {
    pub lhs: f64,
    pub rhs: f64,
    pub violated: bool,
}

/// Checks `P(n;m) ≤ P(n;n') + P(n';m)`.
pub fn wigner_spin(p_nm: f64, p_nn2: f64, p_n2m: f64) -> WignerVerdict {
    let lhs = p_nm;
    let rhs = p_nn2 + p_n2m;
    WignerVerdict {
        lhs,
        rhs,
        violated: lhs > rhs + 1e-12,
    }
}
