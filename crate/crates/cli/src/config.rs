use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qsd_core::qstate::BlochVector;
use qsd_core::{ConstraintMode, ConstraintSet, ScenarioId, ScenarioParams};

use crate::error::CliError;
use crate::params::ParamOverrides;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }

    /// Points per axis when `--resolution` is not given.
    pub fn default_resolution(self) -> usize {
        match self {
            // three axes, each point running a full two-angle search
            FigureId::Fig3 => 21,
            _ => 101,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown figure '{s}' (expected fig1..fig6)")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Figure { id: FigureId, body_values: bool },
    Optimize,
    Simulate,
    Verify,
}

/// A fully parsed invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub resolution: Option<usize>,
    pub params: ParamOverrides,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(r) = self.resolution {
            if r < 3 {
                return Err(CliError::Usage(format!("resolution must be at least 3, got {r}")));
            }
            if !matches!(self.command, Command::Figure { .. }) {
                return Err(CliError::Usage("--resolution only applies to figure".into()));
            }
        }
        for (name, v) in [("d", self.params.d), ("E", self.params.e)] {
            if let Some(v) = v {
                if !(0.0..=1.0).contains(&v) {
                    return Err(CliError::Usage(format!("{name} = {v} must lie in [0, 1]")));
                }
            }
        }
        if self.params.trials == Some(0) {
            return Err(CliError::Usage("trials must be at least 1".into()));
        }
        Ok(())
    }

    pub fn resolution_for(&self, id: FigureId) -> usize {
        self.resolution.unwrap_or_else(|| id.default_resolution())
    }
}

fn require(v: Option<f64>, scenario: ScenarioId, key: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{scenario} requires --{key}")))
}

fn bloch(v: [f64; 3]) -> Result<BlochVector, CliError> {
    Ok(BlochVector::new(v[0], v[1], v[2])?)
}

/// Scenario parameters from overrides; keys foreign to the scenario are errors.
pub fn scenario_params(p: &ParamOverrides) -> Result<ScenarioParams, CliError> {
    let id = p.scenario.ok_or_else(|| CliError::Usage("--scenario is required".into()))?;
    let allowed: &[&str] = match id {
        ScenarioId::Example => &[],
        ScenarioId::CaseI => &["chi", "delta"],
        ScenarioId::CaseII => &["m", "n"],
        ScenarioId::CaseIII => &["lambda", "mu"],
        ScenarioId::CaseIV | ScenarioId::CaseIVProduct => &["lambda", "mu", "x", "y"],
    };
    if let Some(k) = p.shape_keys().into_iter().find(|k| !allowed.contains(k)) {
        return Err(CliError::Usage(format!("--{k} does not apply to {id}")));
    }
    if id == ScenarioId::CaseIV && p.phi.is_some() {
        return Err(CliError::Usage("case4 has a single free angle; --phi does not apply".into()));
    }
    let params = match id {
        ScenarioId::Example => ScenarioParams::Example,
        ScenarioId::CaseI => ScenarioParams::CaseI {
            chi: require(p.chi, id, "chi")?,
            delta: require(p.delta, id, "delta")?,
        },
        ScenarioId::CaseII => ScenarioParams::CaseII {
            m: bloch(p.m.ok_or_else(|| CliError::Usage("case2 requires --m".into()))?)?,
            n: bloch(p.n.ok_or_else(|| CliError::Usage("case2 requires --n".into()))?)?,
        },
        ScenarioId::CaseIII => ScenarioParams::CaseIII {
            lambda: require(p.lambda, id, "lambda")?,
            mu: require(p.mu, id, "mu")?,
        },
        ScenarioId::CaseIV => ScenarioParams::CaseIV {
            lambda: require(p.lambda, id, "lambda")?,
            mu: require(p.mu, id, "mu")?,
            x: require(p.x, id, "x")?,
            y: require(p.y, id, "y")?,
        },
        ScenarioId::CaseIVProduct => ScenarioParams::CaseIVProduct {
            lambda: require(p.lambda, id, "lambda")?,
            mu: require(p.mu, id, "mu")?,
            x: require(p.x, id, "x")?,
            y: require(p.y, id, "y")?,
        },
    };
    Ok(params)
}

/// Constraint set from overrides; `d` is mandatory, `E` defaults to 1.
pub fn constraints(p: &ParamOverrides) -> Result<ConstraintSet, CliError> {
    let d = p.d.ok_or_else(|| CliError::Usage("--d is required".into()))?;
    Ok(ConstraintSet::new(d, p.e.unwrap_or(1.0), p.e_mode.unwrap_or(ConstraintMode::Strict))?)
}

/// The free-parameter point given by `--theta`/`--phi`, if any.
pub fn free_point(params: &ScenarioParams, p: &ParamOverrides) -> Result<Option<Vec<f64>>, CliError> {
    let names = params.free_names();
    match (p.theta, p.phi) {
        (None, None) => Ok(None),
        (Some(t), None) if names.len() == 1 => Ok(Some(vec![t])),
        (Some(t), Some(f)) if names.len() == 2 => Ok(Some(vec![t, f])),
        _ => Err(CliError::Usage(format!(
            "{} takes the free angle(s) {}",
            params.id(),
            names.iter().map(|n| format!("--{n}")).collect::<Vec<_>>().join(" ")
        ))),
    }
}
