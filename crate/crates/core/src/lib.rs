// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Entangled neutral-meson pairs: oscillation and decay, Bell-type
//! inequalities, decoherence and entanglement measures.
//!
//! Times are in units of the short-lived lifetime `τ_S` and rates in units
//! of `Γ_S`, so `Γ_S = 1` throughout.

pub mod bell;
pub mod decoherence;
pub mod entanglement;
pub mod error;
pub mod meson;
pub mod pair;

pub use error::{KaonError, Result};
