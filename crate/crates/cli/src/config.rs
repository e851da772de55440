// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! `kaonlab.conf`: plain `key = value` lines, `#` comments.

use std::path::{Path, PathBuf};

use kaonlab::meson::params::{
    DEFAULT_EPS_ABS, DEFAULT_EPS_PHASE_DEG, KAON_DELTA_M_TAU_S, KAON_TAU_RATIO,
};
use kaonlab::meson::{epsilon_from_polar, make_params, MesonParams, SystemLabel};
use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const DEFAULT_CONFIG_FILE: &str = "kaonlab.conf";
pub const CONFIG_ENV: &str = "KAONLAB_CONFIG";

/// Meson parameters as given; unset values fall back to defaults at resolution.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ParamOverrides {
    pub delta_m_tau_s: Option<f64>,
    pub tau_l_over_tau_s: Option<f64>,
    pub eps_abs: Option<f64>,
    pub eps_phase_deg: Option<f64>,
    pub system_label: Option<SystemLabel>,
}

impl ParamOverrides {
    /// Values in `self` win over `base`.
    pub fn over(&self, base: &ParamOverrides) -> ParamOverrides {
        ParamOverrides {
            delta_m_tau_s: self.delta_m_tau_s.or(base.delta_m_tau_s),
            tau_l_over_tau_s: self.tau_l_over_tau_s.or(base.tau_l_over_tau_s),
            eps_abs: self.eps_abs.or(base.eps_abs),
            eps_phase_deg: self.eps_phase_deg.or(base.eps_phase_deg),
            system_label: self.system_label.or(base.system_label),
        }
    }

    pub fn resolve(&self) -> CliResult<MesonParams> {
        self.resolve_with_eps_default(DEFAULT_EPS_ABS)
    }

    /// Like [`resolve`](Self::resolve) with a different default for `|ε|`.
    pub fn resolve_with_eps_default(&self, eps_abs: f64) -> CliResult<MesonParams> {
        let eps = epsilon_from_polar(
            self.eps_abs.unwrap_or(eps_abs),
            self.eps_phase_deg.unwrap_or(DEFAULT_EPS_PHASE_DEG),
        );
        let params = make_params(
            self.delta_m_tau_s.unwrap_or(KAON_DELTA_M_TAU_S),
            self.tau_l_over_tau_s.unwrap_or(KAON_TAU_RATIO),
            eps,
        )?;
        Ok(match self.system_label {
            Some(label) => params.with_label(label),
            None => params,
        })
    }
}

fn parse_number(key: &str, value: &str, line: usize) -> CliResult<f64> {
    value.parse::<f64>().map_err(|_| CliError::Config {
        line,
        msg: format!("value of '{key}' is not a number: '{value}'"),
    })
}

pub fn parse_config(text: &str) -> CliResult<ParamOverrides> {
    let mut out = ParamOverrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| CliError::Config {
            line,
            msg: format!("expected key = value, got '{content}'"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "delta_m_tau_s" => out.delta_m_tau_s = Some(parse_number(key, value, line)?),
            "tau_l_over_tau_s" => out.tau_l_over_tau_s = Some(parse_number(key, value, line)?),
            "eps_abs" => out.eps_abs = Some(parse_number(key, value, line)?),
            "eps_phase_deg" => out.eps_phase_deg = Some(parse_number(key, value, line)?),
            "system_label" => {
                out.system_label = Some(value.parse().map_err(|_| CliError::Config {
                    line,
                    msg: format!("unknown system label '{value}'"),
                })?)
            }
            other => {
                return Err(CliError::Config {
                    line,
                    msg: format!("unknown key '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

/// Explicit flag, then the environment variable, then `./kaonlab.conf` if present.
pub fn config_path(flag: Option<&Path>, env: Option<&str>) -> Option<(PathBuf, bool)> {
    if let Some(p) = flag {
        return Some((p.to_path_buf(), true));
    }
    if let Some(e) = env.filter(|e| !e.is_empty()) {
        return Some((PathBuf::from(e), true));
    }
    let default = PathBuf::from(DEFAULT_CONFIG_FILE);
    default.exists().then_some((default, false))
}

pub fn load_config(flag: Option<&Path>, env: Option<&str>) -> CliResult<ParamOverrides> {
    match config_path(flag, env) {
        None => Ok(ParamOverrides::default()),
        Some((path, _)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::io(format!("reading config {}", path.display()), e))?;
            parse_config(&text)
        }
    }
}
