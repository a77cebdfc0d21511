//! Flat `key = value` scenario files.
//!
//! ```text
//! # Case II at the fig3 bound
//! scenario = case2
//! m = 0, 0, 0.8
//! n = 0.3, 0, -0.2
//! d = 0.6
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Keys may appear once.

use std::str::FromStr;

use qsd_core::{ConstraintMode, ScenarioId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("line {line}: expected 'key = value'")]
    Syntax { line: usize },
    #[error("line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: '{key}' given more than once")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: bad value for '{key}': {reason}")]
    Value { line: usize, key: String, reason: String },
}

/// Every setting a scenario file or the command line can supply.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamOverrides {
    pub scenario: Option<ScenarioId>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub chi: Option<f64>,
    pub delta: Option<f64>,
    pub m: Option<[f64; 3]>,
    pub n: Option<[f64; 3]>,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub d: Option<f64>,
    pub e: Option<f64>,
    pub e_mode: Option<ConstraintMode>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

/// Finite real number.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{}' is not a number", s.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{}' is not finite", s.trim()))
    }
}

/// Bloch vector written `x,y,z`.
pub fn parse_vector(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated components, found {}", parts.len()));
    }
    Ok([parse_real(parts[0])?, parse_real(parts[1])?, parse_real(parts[2])?])
}

fn set<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<(), ParamError> {
    if slot.is_some() {
        return Err(ParamError::Duplicate { line, key: key.to_string() });
    }
    *slot = Some(value);
    Ok(())
}

pub fn parse_params(text: &str) -> Result<ParamOverrides, ParamError> {
    let mut p = ParamOverrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or(ParamError::Syntax { line })?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |reason: String| ParamError::Value { line, key: key.to_string(), reason };
        let real = || parse_real(value).map_err(bad);
        match key {
            "scenario" => set(&mut p.scenario, ScenarioId::from_str(value).map_err(|e| bad(e.to_string()))?, line, key)?,
            "theta" => set(&mut p.theta, real()?, line, key)?,
            "phi" => set(&mut p.phi, real()?, line, key)?,
            "chi" => set(&mut p.chi, real()?, line, key)?,
            "delta" => set(&mut p.delta, real()?, line, key)?,
            "m" => set(&mut p.m, parse_vector(value).map_err(bad)?, line, key)?,
            "n" => set(&mut p.n, parse_vector(value).map_err(bad)?, line, key)?,
            "lambda" => set(&mut p.lambda, real()?, line, key)?,
            "mu" => set(&mut p.mu, real()?, line, key)?,
            "x" => set(&mut p.x, real()?, line, key)?,
            "y" => set(&mut p.y, real()?, line, key)?,
            "d" => set(&mut p.d, real()?, line, key)?,
            "E" => set(&mut p.e, real()?, line, key)?,
            "e_mode" => set(&mut p.e_mode, ConstraintMode::from_str(value).map_err(|e| bad(e.to_string()))?, line, key)?,
            "trials" => set(&mut p.trials, value.parse().map_err(|_| bad(format!("'{value}' is not a count")))?, line, key)?,
            "seed" => set(&mut p.seed, value.parse().map_err(|_| bad(format!("'{value}' is not a seed")))?, line, key)?,
            _ => return Err(ParamError::UnknownKey { line, key: key.to_string() }),
        }
    }
    Ok(p)
}

impl ParamOverrides {
    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: ParamOverrides) -> ParamOverrides {
        ParamOverrides {
            scenario: over.scenario.or(self.scenario),
            theta: over.theta.or(self.theta),
            phi: over.phi.or(self.phi),
            chi: over.chi.or(self.chi),
            delta: over.delta.or(self.delta),
            m: over.m.or(self.m),
            n: over.n.or(self.n),
            lambda: over.lambda.or(self.lambda),
            mu: over.mu.or(self.mu),
            x: over.x.or(self.x),
            y: over.y.or(self.y),
            d: over.d.or(self.d),
            e: over.e.or(self.e),
            e_mode: over.e_mode.or(self.e_mode),
            trials: over.trials.or(self.trials),
            seed: over.seed.or(self.seed),
        }
    }

    /// Names of the scenario-shape keys that are set.
    pub fn shape_keys(&self) -> Vec<&'static str> {
        [
            ("chi", self.chi.is_some()),
            ("delta", self.delta.is_some()),
            ("m", self.m.is_some()),
            ("n", self.n.is_some()),
            ("lambda", self.lambda.is_some()),
            ("mu", self.mu.is_some()),
            ("x", self.x.is_some()),
            ("y", self.y.is_some()),
        ]
        .into_iter()
        .filter_map(|(k, set)| set.then_some(k))
        .collect()
    }
}
