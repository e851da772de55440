// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Decoherence of single and entangled mesons under a projector dissipator,
//! the resulting strangeness observables, and fits of the decoherence
//! strength to asymmetry data.
//!
//! CP invariance is assumed throughout (`ε = 0`), so `K_S = K₁` and
//! `K_L = K₂` are orthonormal.

pub mod fit;
pub mod lindblad;
pub mod observables;

pub use fit::{
    default_time_pairs, fit_decoherence, synth_dataset, weighted_average, AsymmetryDataset,
    AsymmetryRow, FitModel, FitResult, WeightedAverage, LAMBDA_BAR_MEV, LAMBDA_BAR_REFERENCE,
    LAMBDA_BAR_UPPER_MEV, ZETA_BAR_REFERENCE,
};
pub use lindblad::{evolve_pair, evolve_single, PairDensityMatrix};
pub use observables::{
    asymmetry_lambda, asymmetry_qm, asymmetry_zeta, prob_lambda, prob_zeta, zeta_of_lambda,
};
