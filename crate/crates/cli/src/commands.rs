// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Subcommand bodies. All numbers come from the `kaonlab` library; this
//! module only validates arguments and formats results.

use kaonlab::bell::{cp_bounds, maximize_chsh, CpBoundsReport, ExpectationModel, OptimizerConfig};
use kaonlab::decoherence::{
    asymmetry_lambda, asymmetry_qm, default_time_pairs, fit_decoherence, synth_dataset,
    weighted_average, FitResult, WeightedAverage,
};
use kaonlab::entanglement::measures_sweep;
use kaonlab::meson::MesonParams;
use kaonlab::pair::outcome_probabilities;
use kaonlab::KaonError;
use serde::Serialize;

use crate::config::ParamOverrides;
use crate::error::{CliError, CliResult};
use crate::ingest::ingest_csv;
use crate::{Command, Format};

pub struct Output {
    pub body: Vec<u8>,
}

/// Self-describing JSON envelope.
#[derive(Debug, Serialize)]
pub struct Report<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a [String],
    pub params: Option<MesonParams>,
    pub payload: T,
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::io("formatting CSV", std::io::Error::other(e));
        w.write_record(&self.header).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.to_string()))
                .map_err(fail)?;
        }
        w.into_inner()
            .map_err(|e| CliError::io("formatting CSV", std::io::Error::other(e.to_string())))
    }

    fn records(&self) -> Vec<serde_json::Map<String, serde_json::Value>> {
        self.rows
            .iter()
            .map(|row| {
                self.header
                    .iter()
                    .zip(row)
                    .map(|(h, v)| (h.to_string(), serde_json::json!(v)))
                    .collect()
            })
            .collect()
    }
}

fn json<T: Serialize>(
    echo: &[String],
    params: Option<MesonParams>,
    payload: T,
) -> CliResult<Output> {
    let report = Report {
        tool: "kaonlab",
        version: env!("CARGO_PKG_VERSION"),
        command: echo,
        params,
        payload,
    };
    let mut body = serde_json::to_vec_pretty(&report)
        .map_err(|e| CliError::io("formatting JSON", std::io::Error::other(e)))?;
    body.push(b'\n');
    Ok(Output { body })
}

fn emit_table(
    table: Table,
    format: Option<Format>,
    echo: &[String],
    params: Option<MesonParams>,
) -> CliResult<Output> {
    match format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(Output { body: table.csv()? }),
        Format::Json => json(echo, params, table.records()),
    }
}

fn json_only(format: Option<Format>, name: &str) -> CliResult<()> {
    if format == Some(Format::Csv) {
        return Err(CliError::Usage(format!("{name} only produces JSON")));
    }
    Ok(())
}

fn linspace(from: f64, to: f64, steps: usize) -> CliResult<Vec<f64>> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if !(from.is_finite() && to.is_finite()) || to < from {
        return Err(CliError::Usage(format!("invalid range [{from}, {to}]")));
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    let h = (to - from) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                to
            } else {
                from + i as f64 * h
            }
        })
        .collect())
}

/// Decoherence commands assume CP invariance: `ε` defaults to zero and an
/// explicit nonzero `ε` is refused.
fn cp_invariant_params(overrides: &ParamOverrides) -> CliResult<MesonParams> {
    let params = overrides.resolve_with_eps_default(0.0)?;
    if !params.is_cp_conserving() {
        return Err(CliError::Physics(KaonError::InvalidParameter(format!(
            "the decoherence model assumes CP invariance; got ε = {} (set eps_abs = 0)",
            params.epsilon
        ))));
    }
    Ok(params)
}

#[derive(Serialize)]
struct ChshPayload<'a> {
    model: ExpectationModel,
    optimizer: OptimizerConfig,
    rows: &'a [serde_json::Map<String, serde_json::Value>],
}

#[derive(Serialize)]
struct FitEntry {
    input: String,
    result: FitResult,
}

#[derive(Serialize)]
struct FitPayload {
    fits: Vec<FitEntry>,
    weighted_average: Option<WeightedAverage>,
}

pub fn execute(
    command: &Command,
    overrides: &ParamOverrides,
    format: Option<Format>,
    echo: &[String],
) -> CliResult<Output> {
    match command {
        Command::Probabilities {
            k_left,
            k_right,
            t_max,
            steps,
        } => {
            let params = overrides.resolve()?;
            let times = linspace(0.0, *t_max, *steps)?;
            let (kl, kr) = (k_left.state(), k_right.state());
            let mut rows = Vec::with_capacity(times.len() * times.len());
            for &t_l in &times {
                for &t_r in &times {
                    let p = outcome_probabilities(&kl, t_l, &kr, t_r, &params)?;
                    rows.push(vec![t_l, t_r, p.yy, p.nn, p.yn, p.ny, p.expectation()]);
                }
            }
            let table = Table {
                header: vec!["t_l", "t_r", "P_YY", "P_NN", "P_YN", "P_NY", "E"],
                rows,
            };
            emit_table(table, format, echo, Some(params))
        }
        Command::ChshScan {
            model,
            x_from,
            x_to,
            steps,
            t_max,
            grid,
            top_seeds,
        } => {
            let cfg = OptimizerConfig {
                grid_points: *grid,
                t_max: *t_max,
                top_seeds: *top_seeds,
                ..OptimizerConfig::default()
            };
            let mut rows = Vec::new();
            for x in linspace(*x_from, *x_to, *steps)? {
                let r = maximize_chsh(x, *model, &cfg)?;
                let t = r.argmax.to_array();
                rows.push(vec![x, r.s_max, t[0], t[1], t[2], t[3]]);
            }
            let table = Table {
                header: vec!["x", "s_max", "t_a", "t_b", "t_a'", "t_b'"],
                rows,
            };
            match format.unwrap_or(Format::Csv) {
                Format::Csv => Ok(Output { body: table.csv()? }),
                Format::Json => json(
                    echo,
                    None,
                    ChshPayload {
                        model: *model,
                        optimizer: cfg,
                        rows: &table.records(),
                    },
                ),
            }
        }
        Command::CpBounds => {
            json_only(format, "cp-bounds")?;
            let params = overrides.resolve()?;
            let report: CpBoundsReport = cp_bounds(&params)?;
            json(echo, Some(params), report)
        }
        Command::AsymCurve {
            lambda,
            t_first,
            dt_max,
            steps,
        } => {
            let params = cp_invariant_params(overrides)?;
            let mut rows = Vec::new();
            for dt in linspace(0.0, *dt_max, *steps)? {
                let t_l = t_first + dt;
                rows.push(vec![
                    dt,
                    asymmetry_qm(t_l, *t_first, &params)?,
                    asymmetry_lambda(t_l, *t_first, *lambda, &params)?,
                ]);
            }
            let table = Table {
                header: vec!["dt", "asym_qm", "asym_lambda"],
                rows,
            };
            emit_table(table, format, echo, Some(params))
        }
        Command::Fit { input, model } => {
            json_only(format, "fit")?;
            let params = cp_invariant_params(overrides)?;
            let mut fits = Vec::new();
            for path in input {
                let data = ingest_csv(path)?;
                fits.push(FitEntry {
                    input: path.display().to_string(),
                    result: fit_decoherence(&data, *model, &params)?,
                });
            }
            let weighted_average = if fits.len() > 1 {
                let results: Vec<FitResult> = fits.iter().map(|f| f.result).collect();
                Some(weighted_average(&results)?)
            } else {
                None
            };
            json(
                echo,
                Some(params),
                FitPayload {
                    fits,
                    weighted_average,
                },
            )
        }
        Command::Synth {
            lambda,
            seed,
            noise,
            points,
            ..
        } => {
            if format == Some(Format::Json) {
                return Err(CliError::Usage("synth only produces CSV".into()));
            }
            if *points == 0 {
                return Err(CliError::Usage("--points must be at least 1".into()));
            }
            let params = cp_invariant_params(overrides)?;
            let data = synth_dataset(
                *lambda,
                &default_time_pairs(*points),
                *noise,
                *seed,
                &params,
            )?;
            let table = Table {
                header: vec!["t_l", "t_r", "asym", "sigma"],
                rows: data
                    .rows
                    .iter()
                    .map(|r| vec![r.t_l, r.t_r, r.asym, r.sigma])
                    .collect(),
            };
            Ok(Output { body: table.csv()? })
        }
        Command::Measures {
            lambda,
            t_from,
            t_to,
            steps,
        } => {
            linspace(*t_from, *t_to, *steps)?;
            let reports = measures_sweep(*lambda, *t_from, *t_to, *steps)?;
            let table = Table {
                header: vec!["t", "entropy", "one_minus_E", "C", "f", "zeta"],
                rows: reports
                    .iter()
                    .map(|r| {
                        vec![
                            r.t,
                            r.entropy,
                            r.one_minus_eof(),
                            r.concurrence,
                            r.fef,
                            r.zeta,
                        ]
                    })
                    .collect(),
            };
            emit_table(table, format, echo, None)
        }
    }
}
