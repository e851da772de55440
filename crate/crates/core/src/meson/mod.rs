// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Constants, single-meson states and free evolution.

pub mod evolution;
pub mod params;
pub mod state;

pub use evolution::{
    evolve, g_pm, kl_ks_overlap, mass_phases, omega_overlaps, oscillation_probability, OmegaRecord,
    Strangeness,
};
pub use params::{
    epsilon_from_polar, gamma_s_mev, internal_rate_to_mev, internal_time_to_seconds, make_params,
    mev_to_internal_rate, MesonParams, SystemLabel,
};
pub use state::{to_basis, Basis, NamedState, QuasiSpinState};
