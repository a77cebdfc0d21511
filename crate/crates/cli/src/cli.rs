//! Argument parsing and command dispatch for the `qsd` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qsd_core::mcsim::simulate;
use qsd_core::optimizer::optimize_lenient;
use qsd_core::scenarios::Flag;
use qsd_core::{ConstraintMode, OptimizerConfig, ScenarioId};

use crate::config::{constraints, free_point, scenario_params, Command, FigureId, RunConfig};
use crate::error::{CliError, EXIT_CHECK_FAILED, EXIT_OK};
use crate::figures::{figure_table, FigureSettings};
use crate::params::{parse_params, parse_real, parse_vector, ParamOverrides};
use crate::table::format_value;
use crate::verify::{run_checks, write_csv, write_report, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "qsd", version, about = "Constrained qubit discrimination with auxiliary extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Write a figure dataset as CSV.
    Figure(FigureArgs),
    /// Minimize the joint error for one scenario.
    Optimize(ScenarioArgs),
    /// Monte Carlo run of the joint measurement.
    Simulate(SimulateArgs),
    /// Run the oracle checks.
    Verify(VerifyArgs),
}

fn real(s: &str) -> Result<f64, String> {
    parse_real(s)
}

#[derive(Debug, Default, Args)]
pub struct BoundArgs {
    /// Bound on the auxiliary distinguishability.
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub d: Option<f64>,
    /// Bound on the joint concurrence.
    #[arg(long = "E", value_parser = real, allow_hyphen_values = true)]
    pub e: Option<f64>,
    /// `strict` rejects points above E; `report` only records the slack.
    #[arg(long, value_parser = |s: &str| s.parse::<ConstraintMode>().map_err(|e| e.to_string()))]
    pub e_mode: Option<ConstraintMode>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, value_parser = |s: &str| s.parse::<FigureId>().map_err(|e| e.to_string()))]
    pub id: FigureId,
    /// Points per axis.
    #[arg(long)]
    pub resolution: Option<usize>,
    #[command(flatten)]
    pub bounds: BoundArgs,
    /// fig5/fig6: λ = 1/3, µ = 1/4 instead of λ = 0.25, µ = 0.33.
    #[arg(long)]
    pub body_values: bool,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// `key = value` file; command-line flags take precedence.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, value_parser = |s: &str| s.parse::<ScenarioId>().map_err(|e| e.to_string()))]
    pub scenario: Option<ScenarioId>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub chi: Option<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    /// Bloch vector `x,y,z`.
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
    pub m: Option<[f64; 3]>,
    /// Bloch vector `x,y,z`.
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
    pub n: Option<[f64; 3]>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub y: Option<f64>,
    #[command(flatten)]
    pub bounds: BoundArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// CSV copy of the check report.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn load_params(path: &Path) -> Result<ParamOverrides, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_params(&text).map_err(|source| CliError::Params { path: path.to_path_buf(), source })
}

impl ScenarioArgs {
    fn overrides(&self) -> Result<ParamOverrides, CliError> {
        let base = match &self.params {
            Some(p) => load_params(p)?,
            None => ParamOverrides::default(),
        };
        Ok(base.overlay(ParamOverrides {
            scenario: self.scenario,
            theta: self.theta,
            phi: self.phi,
            chi: self.chi,
            delta: self.delta,
            m: self.m,
            n: self.n,
            lambda: self.lambda,
            mu: self.mu,
            x: self.x,
            y: self.y,
            d: self.bounds.d,
            e: self.bounds.e,
            e_mode: self.bounds.e_mode,
            ..Default::default()
        }))
    }
}

impl Cli {
    /// Resolves parameter files and flags into a validated [`RunConfig`].
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let config = match self.command {
            Sub::Figure(a) => RunConfig {
                command: Command::Figure { id: a.id, body_values: a.body_values },
                resolution: a.resolution,
                params: ParamOverrides { d: a.bounds.d, e: a.bounds.e, e_mode: a.bounds.e_mode, ..Default::default() },
                out: a.out,
            },
            Sub::Optimize(a) => {
                RunConfig { command: Command::Optimize, resolution: None, params: a.overrides()?, out: None }
            }
            Sub::Simulate(a) => {
                let over = ParamOverrides { trials: a.trials, seed: a.seed, ..Default::default() };
                RunConfig {
                    command: Command::Simulate,
                    resolution: None,
                    params: a.scenario.overrides()?.overlay(over),
                    out: None,
                }
            }
            Sub::Verify(a) => RunConfig { command: Command::Verify, resolution: None, params: ParamOverrides::default(), out: a.report },
        };
        config.validate()?;
        Ok(config)
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io { path: PathBuf::from("<stdout>"), source }
}

fn describe(flag: &Flag) -> String {
    match flag {
        Flag::TrivialBound => "d = 1 leaves the auxiliary unconstrained".into(),
        Flag::IdenticalTargets => "the two targets coincide".into(),
        Flag::WrappedAngle { name, from, to } => format!("{name} = {from} wrapped to {to}"),
        Flag::OutsideRange { name, value } => format!("{name} = {value} is outside its usual range"),
    }
}

fn warn_flags<E: Write>(flags: &[Flag], err: &mut E) {
    for f in flags {
        let _ = writeln!(err, "warning: {}", describe(f));
    }
}

fn run_figure<O: Write>(config: &RunConfig, id: FigureId, body_values: bool, out: &mut O) -> Result<i32, CliError> {
    let settings = FigureSettings {
        id,
        resolution: config.resolution_for(id),
        d: config.params.d,
        e: config.params.e,
        e_mode: config.params.e_mode,
        body_values,
    };
    let table = figure_table(&settings, &OptimizerConfig::default())?;
    match &config.out {
        Some(path) => {
            let file = fs::File::create(path).map_err(io_err(path))?;
            table.write_csv(std::io::BufWriter::new(file))?;
        }
        None => table.write_csv(&mut *out)?,
    }
    Ok(EXIT_OK)
}

fn run_optimize<O: Write, E: Write>(config: &RunConfig, out: &mut O, err: &mut E) -> Result<i32, CliError> {
    let p = &config.params;
    if p.theta.is_some() || p.phi.is_some() {
        return Err(CliError::Usage("optimize searches the free angles; --theta/--phi do not apply".into()));
    }
    let params = scenario_params(p)?;
    warn_flags(&params.normalized()?.flags, err);
    let c = constraints(p)?;
    let r = optimize_lenient(&params, &c, &OptimizerConfig::default())?;
    if !r.feasible {
        let _ = writeln!(err, "warning: no point satisfies the constraints; least-violation point reported");
    }
    let mut lines = vec![format!("scenario={}", r.scenario)];
    lines.extend(params.fixed().into_iter().map(|(k, v)| format!("{k}={}", format_value(v))));
    lines.push(format!("d={}", format_value(c.d)));
    lines.push(format!("E={}", format_value(c.e)));
    lines.push(format!("e_mode={}", c.e_mode));
    lines.extend(r.argmin.iter().map(|(k, v)| format!("{k}={}", format_value(*v))));
    lines.extend([
        format!("p_npovm={}", format_value(r.p_npovm.value())),
        format!("p_povm={}", format_value(r.p_povm.value())),
        format!("delta_p={}", format_value(r.delta_p)),
        format!("slack_d={}", format_value(r.slacks.d)),
        format!("slack_e={}", format_value(r.slacks.e)),
        format!("boundary_d={}", r.boundary_active.d),
        format!("boundary_e={}", r.boundary_active.e),
        format!("feasible={}", r.feasible),
        format!("converged={}", r.converged),
    ]);
    for l in lines {
        writeln!(out, "{l}").map_err(stdout_err)?;
    }
    Ok(EXIT_OK)
}

fn run_simulate<O: Write, E: Write>(config: &RunConfig, out: &mut O, err: &mut E) -> Result<i32, CliError> {
    let p = &config.params;
    let trials = p.trials.ok_or_else(|| CliError::Usage("--trials is required".into()))?;
    let seed = p.seed.ok_or_else(|| CliError::Usage("--seed is required".into()))?;
    let params = scenario_params(p)?;
    warn_flags(&params.normalized()?.flags, err);
    let point = match (free_point(&params, p)?, p.d) {
        (Some(point), None) => point,
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("give either the free angles or --d, not both".into()))
        }
        (None, Some(_)) => {
            let r = optimize_lenient(&params, &constraints(p)?, &OptimizerConfig::default())?;
            if !r.feasible {
                let _ = writeln!(err, "warning: no point satisfies the constraints; least-violation point used");
            }
            r.argmin.iter().map(|(_, v)| *v).collect()
        }
        (None, None) => {
            return Err(CliError::Usage(format!(
                "simulate needs the free angles ({}) or --d to locate the optimum",
                params.free_names().join(", ")
            )))
        }
    };
    let pair = params.build(&point)?;
    let rep = simulate(&pair, trials, seed)?;
    let mut lines = vec![format!("scenario={}", params.id())];
    lines.extend(params.free_names().iter().zip(&point).map(|(k, v)| format!("{k}={}", format_value(*v))));
    lines.extend([
        format!("trials={}", rep.trials),
        format!("seed={}", rep.seed),
        format!("errors={}", rep.errors),
        format!("empirical_error={}", format_value(rep.empirical_error)),
        format!("standard_error={}", format_value(rep.standard_error)),
        format!("analytic_error={}", format_value(rep.analytic_error.value())),
        format!("z_score={}", format_value(rep.z_score)),
    ]);
    for l in lines {
        writeln!(out, "{l}").map_err(stdout_err)?;
    }
    Ok(EXIT_OK)
}

fn run_verify<O: Write, E: Write>(
    config: &RunConfig,
    opts: &VerifyOptions,
    out: &mut O,
    err: &mut E,
) -> Result<i32, CliError> {
    let checks = run_checks(opts)?;
    write_report(&checks, &mut *out).map_err(stdout_err)?;
    if let Some(path) = &config.out {
        let file = fs::File::create(path).map_err(io_err(path))?;
        write_csv(&checks, std::io::BufWriter::new(file))?;
    }
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    if failed.is_empty() {
        return Ok(EXIT_OK);
    }
    for c in failed {
        let _ = writeln!(err, "{c}");
    }
    Ok(EXIT_CHECK_FAILED)
}

/// Runs a configuration with explicit verification hooks.
pub fn execute<O: Write, E: Write>(config: &RunConfig, opts: &VerifyOptions, out: &mut O, err: &mut E) -> i32 {
    let result = match &config.command {
        Command::Figure { id, body_values } => run_figure(config, *id, *body_values, out),
        Command::Optimize => run_optimize(config, out, err),
        Command::Simulate => run_simulate(config, out, err),
        Command::Verify => run_verify(config, opts, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        e.exit_code()
    })
}

pub fn run<O: Write, E: Write>(config: &RunConfig, out: &mut O, err: &mut E) -> i32 {
    execute(config, &VerifyOptions::default(), out, err)
}
