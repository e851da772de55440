// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! CHSH combination for strangeness measurements at four times.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KaonError, Result};
use crate::meson::MesonParams;
use crate::pair::{expectation_approx, expectation_bmeson, expectation_unitary};

/// Measurement times `(t_a, t_b, t_a', t_b')`; `a` is the left side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshTimes {
    pub t_a: f64,
    pub t_b: f64,
    pub t_a_prime: f64,
    pub t_b_prime: f64,
}

impl ChshTimes {
    pub fn new(t_a: f64, t_b: f64, t_a_prime: f64, t_b_prime: f64) -> Self {
        ChshTimes {
            t_a,
            t_b,
            t_a_prime,
            t_b_prime,
        }
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        ChshTimes::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t_a, self.t_b, self.t_a_prime, self.t_b_prime]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectationModel {
    /// Decay products ignored.
    Approx,
    /// Decay products included, `ε` neglected.
    Unitary,
    /// Equal widths.
    Bmeson,
}

impl ExpectationModel {
    pub fn expectation(self, t_l: f64, t_r: f64, params: &MesonParams) -> Result<f64> {
        match self {
            ExpectationModel::Approx => expectation_approx(t_l, t_r, params),
            ExpectationModel::Unitary => expectation_unitary(t_l, t_r, params),
            ExpectationModel::Bmeson => expectation_bmeson(t_l, t_r, params),
        }
    }

    /// Parameters for a scan in `x`: kaon widths for the kaon-type models,
    /// `Γ_L = Γ_S` for the B model.
    pub fn params_for(self, x: f64) -> Result<MesonParams> {
        match self {
            ExpectationModel::Approx | ExpectationModel::Unitary => MesonParams::kaon_with_x(x),
            ExpectationModel::Bmeson => MesonParams::bmeson(x),
        }
    }
}

impl fmt::Display for ExpectationModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExpectationModel::Approx => "approx",
            ExpectationModel::Unitary => "unitary",
            ExpectationModel::Bmeson => "bmeson",
        })
    }
}

impl FromStr for ExpectationModel {
    type Err = KaonError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "approx" => Ok(ExpectationModel::Approx),
            "unitary" => Ok(ExpectationModel::Unitary),
            "bmeson" | "b" => Ok(ExpectationModel::Bmeson),
            other => Err(KaonError::InvalidParameter(format!(
                "unknown expectation model '{other}'"
            ))),
        }
    }
}

/// `|E(a,b) − E(a,b')| + |E(a',b') + E(a',b)|` for any two-time correlation `e`.
pub fn chsh_value<F>(times: &ChshTimes, mut e: F) -> Result<f64>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let ab = e(times.t_a, times.t_b)?;
    let ab2 = e(times.t_a, times.t_b_prime)?;
    let a2b2 = e(times.t_a_prime, times.t_b_prime)?;
    let a2b = e(times.t_a_prime, times.t_b)?;
    Ok((ab - ab2).abs() + (a2b2 + a2b).abs())
}

pub fn chsh_kaon(times: &ChshTimes, model: ExpectationModel, params: &MesonParams) -> Result<f64> {
    chsh_value(times, |l, r| model.expectation(l, r, params))
}
