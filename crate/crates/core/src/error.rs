// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the physics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KaonError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid measurement spec: {0}")]
    InvalidSpec(String),
    #[error("bisection bracket invalid: s_max({x_lo}) = {s_lo}, s_max({x_hi}) = {s_hi}")]
    Bracket {
        x_lo: f64,
        x_hi: f64,
        s_lo: f64,
        s_hi: f64,
    },
    #[error("degenerate state: {0}")]
    DegenerateState(String),
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("empty dataset")]
    EmptyData,
    #[error("invalid dataset: {0}")]
    InvalidData(String),
}

pub type Result<T> = std::result::Result<T, KaonError>;

pub(crate) fn ensure_time(name: &str, t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(KaonError::Domain(format!(
            "{name} must be finite and >= 0, got {t}"
        )))
    }
}
