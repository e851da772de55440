// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: configuration, dataset ingestion and dispatch.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or config error,
//! 3 malformed CSV input, 4 physics-domain error.

pub mod commands;
pub mod config;
pub mod error;
pub mod ingest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kaonlab::bell::ExpectationModel;
use kaonlab::decoherence::FitModel;
use kaonlab::meson::{NamedState, SystemLabel};

pub use config::{load_config, parse_config, ParamOverrides, CONFIG_ENV};
pub use error::{CliError, CliResult};
pub use ingest::{ingest_csv, ingest_reader};

#[derive(Debug, Parser)]
#[command(
    name = "kaonlab",
    version,
    about = "Entangled neutral mesons: Bell inequalities, decoherence and entanglement",
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Config file; defaults to $KAONLAB_CONFIG, then ./kaonlab.conf.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Δm in units of 1/τ_S.
    #[arg(long, global = true)]
    pub delta_m: Option<f64>,
    /// τ_L/τ_S.
    #[arg(long, global = true)]
    pub tau_ratio: Option<f64>,
    #[arg(long, global = true)]
    pub eps_abs: Option<f64>,
    #[arg(long, global = true)]
    pub eps_phase: Option<f64>,
    #[arg(long, global = true)]
    pub system: Option<SystemLabel>,
    /// Output file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl GlobalArgs {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            delta_m_tau_s: self.delta_m,
            tau_l_over_tau_s: self.tau_ratio,
            eps_abs: self.eps_abs,
            eps_phase_deg: self.eps_phase,
            system_label: self.system,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Yes/No joint probabilities on a time grid.
    Probabilities {
        #[arg(long, default_value = "k0")]
        k_left: NamedState,
        #[arg(long, default_value = "k0")]
        k_right: NamedState,
        #[arg(long, default_value_t = 5.0)]
        t_max: f64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Maximal CHSH value as a function of x = Δm/Γ.
    ChshScan {
        #[arg(long, default_value = "approx")]
        model: ExpectationModel,
        #[arg(long)]
        x_from: f64,
        #[arg(long)]
        x_to: f64,
        #[arg(long, default_value_t = 26)]
        steps: usize,
        #[arg(long, default_value_t = 8.0)]
        t_max: f64,
        #[arg(long, default_value_t = 8)]
        grid: usize,
        #[arg(long, default_value_t = 16)]
        top_seeds: usize,
    },
    /// CP-violation bounds implied by the Wigner-type inequality.
    CpBounds,
    /// Strangeness asymmetry against Δt for fixed first-measurement time.
    AsymCurve {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        t_first: f64,
        #[arg(long, default_value_t = 10.0)]
        dt_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
    /// Fit the decoherence strength to asymmetry data.
    Fit {
        /// CSV with header t_l,t_r,asym,sigma; repeat to fit several datasets.
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, default_value = "lambda")]
        model: FitModel,
    },
    /// Synthetic asymmetry data from the decoherence model.
    Synth {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.02)]
        noise: f64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entanglement measures of the decohering pair over time.
    Measures {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        t_from: f64,
        #[arg(long, default_value_t = 2.0)]
        t_to: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
    },
}

/// Parses `args`, runs the command and returns the process exit code.
///
/// `env_config` is the value of `KAONLAB_CONFIG`, passed in so callers and
/// tests control it.
pub fn run<I, T>(
    args: I,
    env_config: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, &echo, env_config) {
        Ok(out) => match write_output(&cli, &out, stdout) {
            Ok(()) => 0,
            Err(e) => report_error(&e, stderr),
        },
        Err(e) => report_error(&e, stderr),
    }
}

fn report_error(e: &CliError, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    e.exit_code()
}

fn execute(cli: &Cli, echo: &[String], env_config: Option<&str>) -> CliResult<commands::Output> {
    let file = load_config(cli.global.config.as_deref(), env_config)?;
    let params = cli.global.overrides().over(&file);
    commands::execute(&cli.command, &params, cli.global.format, echo)
}

fn write_output(cli: &Cli, out: &commands::Output, stdout: &mut dyn Write) -> CliResult<()> {
    let target = match &cli.command {
        Command::Synth { out: Some(p), .. } => Some(p),
        _ => cli.global.output.as_ref(),
    };
    match target {
        Some(path) => std::fs::write(path, &out.body)
            .map_err(|e| CliError::io(format!("writing {}", path.display()), e)),
        None => stdout
            .write_all(&out.body)
            .map_err(|e| CliError::io("writing stdout", e)),
    }
}
