// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Bell-type inequalities for spin-½ pairs and entangled mesons.

pub mod cp;
pub mod kaon;
pub mod optimize;
pub mod spin;

pub use cp::{
    cp_bounds, wigner_kaon, wigner_kaon_optimized, CpBoundsReport, WignerKaonReport,
    DELTA_EXPERIMENTAL,
};
pub use kaon::{chsh_kaon, chsh_value, ChshTimes, ExpectationModel};
pub use optimize::{maximize_chsh, violation_boundary, OptimizerConfig, ScanResult};
pub use spin::{chsh_spin, wigner_spin, WignerVerdict};
