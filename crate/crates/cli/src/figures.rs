//! Grid definitions for the six figure datasets.

use std::f64::consts::{FRAC_PI_2, PI};

use qsd_core::optimizer::{sweep, SweepAxis, DEFAULT_SWEEP_CAP};
use qsd_core::qstate::BlochVector;
use qsd_core::{ConstraintMode, ConstraintSet, OptimizerConfig, ScenarioParams};

use crate::config::FigureId;
use crate::error::CliError;
use crate::table::{FigureRow, FigureTable};

/// Default `(λ, µ)` for fig5 and fig6.
pub const DEFAULT_WEIGHTS: (f64, f64) = (0.25, 0.33);
/// `(λ, µ)` selected by `--body-values`.
pub const BODY_WEIGHTS: (f64, f64) = (1.0 / 3.0, 0.25);

#[derive(Clone, Debug, PartialEq)]
pub struct FigureSettings {
    pub id: FigureId,
    pub resolution: usize,
    pub d: Option<f64>,
    pub e: Option<f64>,
    pub e_mode: Option<ConstraintMode>,
    pub body_values: bool,
}

impl FigureSettings {
    pub fn new(id: FigureId) -> Self {
        Self {
            id,
            resolution: id.default_resolution(),
            d: None,
            e: None,
            e_mode: None,
            body_values: false,
        }
    }

    fn weights(&self) -> (f64, f64) {
        if self.body_values {
            BODY_WEIGHTS
        } else {
            DEFAULT_WEIGHTS
        }
    }

    /// Default distinguishability bound for this figure.
    pub fn default_d(&self) -> Option<f64> {
        match self.id {
            FigureId::Fig1 => None,
            FigureId::Fig2 => Some(0.4),
            FigureId::Fig3 => Some(0.6),
            FigureId::Fig4 => Some(0.3),
            FigureId::Fig5 => {
                let (l, m) = self.weights();
                Some(2.0 * (l - m).abs())
            }
            FigureId::Fig6 => Some(0.16),
        }
    }

    fn constraint(&self, d: f64) -> qsd_core::Result<ConstraintSet> {
        let (e, mode) = match self.id {
            FigureId::Fig4 => (0.1, ConstraintMode::ReportOnly),
            _ => (1.0, ConstraintMode::Strict),
        };
        ConstraintSet::new(d, self.e.unwrap_or(e), self.e_mode.unwrap_or(mode))
    }
}

pub fn figure_table(s: &FigureSettings, config: &OptimizerConfig) -> Result<FigureTable, CliError> {
    if s.resolution < 3 {
        return Err(CliError::Usage(format!("resolution must be at least 3, got {}", s.resolution)));
    }
    if s.body_values && !matches!(s.id, FigureId::Fig5 | FigureId::Fig6) {
        return Err(CliError::Usage("--body-values only applies to fig5 and fig6".into()));
    }
    let r = s.resolution;
    let (lambda, mu) = s.weights();
    let d = match (s.id, s.d) {
        (FigureId::Fig1, Some(_)) => return Err(CliError::Usage("fig1 sweeps d; --d does not apply".into())),
        (FigureId::Fig1, None) => 0.0,
        (_, Some(d)) => d,
        (_, None) => s.default_d().expect("every figure but fig1 has a default d"),
    };
    // validate overrides once, up front
    s.constraint(d)?;

    let lin = SweepAxis::linspace;
    let table = match s.id {
        FigureId::Fig1 => sweep(
            vec![lin("d", 0.0, 0.999, r)],
            |c| Ok((ScenarioParams::Example, s.constraint(c[0])?)),
            config,
            DEFAULT_SWEEP_CAP,
        )?,
        FigureId::Fig2 => sweep(
            vec![lin("chi", 0.0, FRAC_PI_2, r), lin("delta", 0.0, FRAC_PI_2, r)],
            |c| Ok((ScenarioParams::CaseI { chi: c[0], delta: c[1] }, s.constraint(d)?)),
            config,
            DEFAULT_SWEEP_CAP,
        )?,
        FigureId::Fig3 => sweep(
            vec![lin("m", -1.0, 1.0, r), lin("n", -1.0, 1.0, r), lin("p", 0.0, 1.0, r)],
            |c| {
                let m = BlochVector::new(0.0, 0.0, c[0])?;
                let n = BlochVector::new(c[2], 0.0, c[1])?;
                Ok((ScenarioParams::CaseII { m, n }, s.constraint(d)?))
            },
            config,
            DEFAULT_SWEEP_CAP,
        )?,
        FigureId::Fig4 => sweep(
            vec![lin("lambda", 0.01, 0.99, r), lin("mu", 0.01, 0.99, r)],
            |c| Ok((ScenarioParams::CaseIII { lambda: c[0], mu: c[1] }, s.constraint(d)?)),
            config,
            DEFAULT_SWEEP_CAP,
        )?,
        FigureId::Fig5 => sweep(
            vec![lin("x", 0.0, FRAC_PI_2, r), lin("y", 0.0, 2.0 * PI, r)],
            |c| Ok((ScenarioParams::CaseIV { lambda, mu, x: c[0], y: c[1] }, s.constraint(d)?)),
            config,
            DEFAULT_SWEEP_CAP,
        )?,
        FigureId::Fig6 => sweep(
            vec![lin("x", 0.0, FRAC_PI_2, r), lin("y", 0.0, 2.0 * PI, r)],
            |c| Ok((ScenarioParams::CaseIVProduct { lambda, mu, x: c[0], y: c[1] }, s.constraint(d)?)),
            config,
            DEFAULT_SWEEP_CAP,
        )?,
    };

    let mut rows = Vec::with_capacity(table.rows.len());
    for row in table.rows {
        match row.outcome {
            Ok(o) => rows.push(FigureRow {
                coords: row.coords,
                p_npovm: o.p_npovm.value(),
                p_povm: o.p_povm.value(),
                slack_d: o.slacks.d,
                slack_e: o.slacks.e,
                feasible: o.feasible,
            }),
            // fig3 grid corners outside the Bloch ball are not states
            Err(_) if s.id == FigureId::Fig3 && BlochVector::new(row.coords[2], 0.0, row.coords[1]).is_err() => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(FigureTable {
        axes: table.axes.into_iter().map(|a| a.name).collect(),
        rows,
    })
}
