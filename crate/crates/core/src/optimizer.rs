//! Constrained minimization of the joint-measurement error over the auxiliary
//! parameters.
//!
//! For a fixed scenario the objective `½ − ¼‖ρ_AB − σ_AB‖₁` is minimized over
//! the free auxiliary angles subject to `D(ρ_A, σ_A) ≤ d` and
//! `max{C(ρ_AB), C(σ_AB)} ≤ E`. The search is an exhaustive grid over the
//! free-parameter box followed by a Nelder–Mead refinement whose infeasible
//! proposals are pulled back onto the constraint boundary.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::measures::ProbabilityValue;
use crate::scenarios::{JointStatePair, ScenarioId, ScenarioParams};

/// Slack magnitude under which a constraint counts as active.
pub const BOUNDARY_TOL: f64 = 1e-6;
pub const DEFAULT_SWEEP_CAP: usize = 1_000_000;
const PROJECTION_STEPS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintMode {
    /// Points violating the concurrence bound are infeasible.
    Strict,
    /// The concurrence bound is evaluated and recorded but never enforced.
    ReportOnly,
}

impl fmt::Display for ConstraintMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintMode::Strict => "strict",
            ConstraintMode::ReportOnly => "report",
        })
    }
}

impl FromStr for ConstraintMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(ConstraintMode::Strict),
            "report" | "report-only" => Ok(ConstraintMode::ReportOnly),
            other => invalid(format!("unknown constraint mode '{other}'")),
        }
    }
}

/// Resource bounds: auxiliary distinguishability `d` and concurrence `e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstraintSet {
    pub d: f64,
    pub e: f64,
    pub e_mode: ConstraintMode,
}

impl ConstraintSet {
    pub fn new(d: f64, e: f64, e_mode: ConstraintMode) -> Result<Self> {
        if !(0.0..=1.0).contains(&d) {
            return invalid(format!("d = {d} outside [0, 1]"));
        }
        if !(0.0..=1.0).contains(&e) {
            return invalid(format!("E = {e} outside [0, 1]"));
        }
        Ok(Self { d, e, e_mode })
    }

    /// Only the distinguishability bound; the concurrence bound is slack.
    pub fn distinguishability(d: f64) -> Result<Self> {
        Self::new(d, 1.0, ConstraintMode::Strict)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub grid_points_per_dim: usize,
    /// Objective tolerance for grid tie-breaking and refinement convergence.
    pub refine_tolerance: f64,
    pub max_refine_iterations: usize,
    pub constraint_slack: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_points_per_dim: 101,
            refine_tolerance: 1e-8,
            max_refine_iterations: 500,
            constraint_slack: 1e-9,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_dim < 3 {
            return invalid("grid_points_per_dim must be at least 3");
        }
        if !(self.refine_tolerance > 0.0 && self.refine_tolerance < 1e-3) {
            return invalid("refine_tolerance must lie in (0, 1e-3)");
        }
        if self.max_refine_iterations == 0 {
            return invalid("max_refine_iterations must be positive");
        }
        if self.constraint_slack.is_nan() || self.constraint_slack <= 0.0 {
            return invalid("constraint_slack must be positive");
        }
        Ok(())
    }
}

/// Constraint slacks; negative means violated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Slacks {
    /// `d − D(ρ_A, σ_A)`
    pub d: f64,
    /// `E − max{C(ρ_AB), C(σ_AB)}`
    pub e: f64,
}

impl Slacks {
    pub fn named(&self) -> [(&'static str, f64); 2] {
        [("slack_d", self.d), ("slack_e", self.e)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryActivity {
    pub d: bool,
    pub e: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizationResult {
    pub scenario: ScenarioId,
    pub p_npovm: ProbabilityValue,
    pub argmin: Vec<(&'static str, f64)>,
    pub p_povm: ProbabilityValue,
    /// `p_npovm − p_povm`; negative values mean the constrained protocol beats Helstrom.
    pub delta_p: f64,
    pub slacks: Slacks,
    pub boundary_active: BoundaryActivity,
    pub feasible: bool,
    /// The refinement met its tolerance (always true when no refinement ran).
    pub converged: bool,
}

impl OptimizationResult {
    pub fn argmin_value(&self, name: &str) -> Option<f64> {
        self.argmin.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

fn slacks_feasible(s: &Slacks, c: &ConstraintSet, tol: f64) -> bool {
    s.d >= -tol && (c.e_mode == ConstraintMode::ReportOnly || s.e >= -tol)
}

fn violation(s: &Slacks, c: &ConstraintSet) -> f64 {
    let mut v = (-s.d).max(0.0);
    if c.e_mode == ConstraintMode::Strict {
        v += (-s.e).max(0.0);
    }
    v
}

#[derive(Clone, Copy, Debug)]
struct Eval {
    objective: f64,
    slacks: Slacks,
}

/// Builds the pair at `point` and its constraint slacks. The objective is
/// computed separately since infeasible points never need it.
fn probe(params: &ScenarioParams, point: &[f64], c: &ConstraintSet) -> Result<(JointStatePair, Slacks)> {
    let pair = params.build(point)?;
    let (c0, c1) = pair.concurrences()?;
    let slacks = Slacks {
        d: c.d - pair.aux_distance()?,
        e: c.e - c0.max(c1),
    };
    Ok((pair, slacks))
}

fn evaluate(params: &ScenarioParams, point: &[f64], c: &ConstraintSet) -> Result<Eval> {
    let (pair, slacks) = probe(params, point, c)?;
    Ok(Eval {
        objective: pair.objective()?,
        slacks,
    })
}

/// Feasibility of one point with the default constraint slack.
pub fn feasible(
    params: &ScenarioParams,
    point: &[f64],
    constraints: &ConstraintSet,
) -> Result<(bool, Slacks)> {
    let tol = OptimizerConfig::default().constraint_slack;
    let (_, slacks) = probe(params, point, constraints)?;
    Ok((slacks_feasible(&slacks, constraints, tol), slacks))
}

struct Problem<'a> {
    params: &'a ScenarioParams,
    constraints: &'a ConstraintSet,
    config: &'a OptimizerConfig,
    bounds: Vec<(f64, f64)>,
}

impl Problem<'_> {
    /// Objective at `x` if it is feasible.
    fn feasible_objective(&self, x: &[f64]) -> Result<Option<f64>> {
        let (pair, slacks) = probe(self.params, x, self.constraints)?;
        if slacks_feasible(&slacks, self.constraints, self.config.constraint_slack) {
            Ok(Some(pair.objective()?))
        } else {
            Ok(None)
        }
    }

    fn objective(&self, x: &[f64]) -> Result<f64> {
        self.params.build(x)?.objective()
    }

    fn grid_points(&self) -> Vec<Vec<f64>> {
        let n = self.config.grid_points_per_dim;
        let axis = |(lo, hi): (f64, f64)| -> Vec<f64> {
            (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect()
        };
        let axes: Vec<Vec<f64>> = self.bounds.iter().map(|b| axis(*b)).collect();
        let mut points = vec![Vec::new()];
        for ax in &axes {
            points = points
                .into_iter()
                .flat_map(|p| {
                    ax.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(*v);
                        q
                    })
                })
                .collect();
        }
        points
    }

    fn clamp(&self, x: &mut [f64]) {
        for (v, (lo, hi)) in x.iter_mut().zip(&self.bounds) {
            *v = v.clamp(*lo, *hi);
        }
    }

    /// Returns a feasible point on the segment from `anchor` (feasible) toward
    /// `proposal`, as far along as the constraints allow.
    fn project(&self, anchor: &[f64], proposal: &[f64]) -> Result<(Vec<f64>, f64)> {
        let mut target = proposal.to_vec();
        self.clamp(&mut target);
        if let Some(f) = self.feasible_objective(&target)? {
            return Ok((target, f));
        }
        let lerp = |t: f64| -> Vec<f64> {
            anchor
                .iter()
                .zip(&target)
                .map(|(a, b)| a + t * (b - a))
                .collect()
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut best = None;
        for _ in 0..PROJECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            let x = lerp(mid);
            match self.feasible_objective(&x)? {
                Some(f) => {
                    lo = mid;
                    best = Some((x, f));
                }
                None => hi = mid,
            }
        }
        match best {
            Some(b) => Ok(b),
            None => Ok((anchor.to_vec(), self.objective(anchor)?)),
        }
    }

    /// Nelder–Mead with feasibility projection. Returns the best vertex, its
    /// objective and whether the simplex met the tolerance.
    fn refine(&self, start: Vec<f64>, f_start: f64) -> Result<(Vec<f64>, f64, bool)> {
        let dim = start.len();
        let n = self.config.grid_points_per_dim;
        let step: Vec<f64> = self
            .bounds
            .iter()
            .map(|(lo, hi)| (hi - lo) / (n - 1) as f64)
            .collect();

        let mut simplex: Vec<(Vec<f64>, f64)> = vec![(start.clone(), f_start)];
        for i in 0..dim {
            let mut best_vertex = None;
            for sign in [1.0, -1.0] {
                let mut x = start.clone();
                x[i] += sign * step[i];
                let (p, f) = self.project(&start, &x)?;
                if (p[i] - start[i]).abs() > 1e-12 {
                    best_vertex = Some((p, f));
                    break;
                }
            }
            simplex.push(best_vertex.unwrap_or_else(|| (start.clone(), f_start)));
        }

        let tol = self.config.refine_tolerance;
        let mut converged = false;
        for _ in 0..self.config.max_refine_iterations {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread = simplex[dim].1 - simplex[0].1;
            let diameter = simplex[1..]
                .iter()
                .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if spread <= tol && diameter <= 1e-9 {
                converged = true;
                break;
            }
            if diameter == 0.0 {
                converged = true;
                break;
            }

            let centroid: Vec<f64> = (0..dim)
                .map(|k| simplex[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64)
                .collect();
            let worst = simplex[dim].clone();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&worst.0)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };
            let anchor = simplex[0].0.clone();

            let (xr, fr) = self.project(&anchor, &along(1.0))?;
            if fr < simplex[0].1 {
                let (xe, fe) = self.project(&anchor, &along(2.0))?;
                simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[dim - 1].1 {
                simplex[dim] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst.1 {
                self.project(&anchor, &along(0.5))?
            } else {
                self.project(&anchor, &along(-0.5))?
            };
            if fc < worst.1.min(fr) {
                simplex[dim] = (xc, fc);
                continue;
            }
            // shrink toward the best vertex
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = vertex
                    .0
                    .iter()
                    .zip(&anchor)
                    .map(|(v, b)| b + 0.5 * (v - b))
                    .collect();
                *vertex = self.project(&anchor, &x)?;
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if !converged {
            converged = simplex[dim].1 - simplex[0].1 <= tol;
        }
        let (x, f) = simplex.swap_remove(0);
        Ok((x, f, converged))
    }
}

/// Outcome of the search before the strict-mode infeasibility decision.
struct Search {
    point: Vec<f64>,
    feasible: bool,
    violation: f64,
    converged: bool,
}

fn search(
    params: &ScenarioParams,
    constraints: &ConstraintSet,
    config: &OptimizerConfig,
) -> Result<Search> {
    config.validate()?;
    let problem = Problem {
        params,
        constraints,
        config,
        bounds: params.free_bounds(),
    };
    let points = problem.grid_points();
    let slack = config.constraint_slack;
    let probes: Vec<(Slacks, Option<f64>)> = points
        .par_iter()
        .map(|p| {
            let (pair, slacks) = probe(params, p, constraints)?;
            let objective = if slacks_feasible(&slacks, constraints, slack) {
                Some(pair.objective()?)
            } else {
                None
            };
            Ok((slacks, objective))
        })
        .collect::<Result<_>>()?;

    let tie = config.refine_tolerance;
    let mut best: Option<(usize, f64)> = None;
    for (i, (_, objective)) in probes.iter().enumerate() {
        if let Some(f) = *objective {
            if best.is_none_or(|(_, b)| f < b - tie) {
                best = Some((i, f));
            }
        }
    }
    // Without a feasible point: least violation, then lowest objective.
    let mut least: Option<(usize, f64, f64)> = None;
    if best.is_none() {
        let violations: Vec<f64> = probes.iter().map(|(s, _)| violation(s, constraints)).collect();
        let floor = violations.iter().copied().fold(f64::INFINITY, f64::min);
        for (i, v) in violations.iter().enumerate() {
            if *v > floor + slack {
                continue;
            }
            let f = problem.objective(&points[i])?;
            if least.is_none_or(|(_, _, lf)| f < lf - tie) {
                least = Some((i, *v, f));
            }
        }
    }

    match best {
        Some((i, f)) => {
            let (point, _, converged) = problem.refine(points[i].clone(), f)?;
            Ok(Search {
                point,
                feasible: true,
                violation: 0.0,
                converged,
            })
        }
        None => {
            let (i, v, _) = least.expect("grid is nonempty");
            Ok(Search {
                point: points[i].clone(),
                feasible: false,
                violation: v,
                converged: true,
            })
        }
    }
}

fn assemble(
    params: &ScenarioParams,
    constraints: &ConstraintSet,
    s: &Search,
) -> Result<OptimizationResult> {
    let ev = evaluate(params, &s.point, constraints)?;
    let p_npovm = ProbabilityValue::new(ev.objective)?;
    let p_povm = params.povm_error()?;
    Ok(OptimizationResult {
        scenario: params.id(),
        p_npovm,
        argmin: params
            .free_names()
            .iter()
            .copied()
            .zip(s.point.iter().copied())
            .collect(),
        p_povm,
        delta_p: p_npovm.value() - p_povm.value(),
        slacks: ev.slacks,
        boundary_active: BoundaryActivity {
            d: ev.slacks.d.abs() <= BOUNDARY_TOL,
            e: ev.slacks.e.abs() <= BOUNDARY_TOL,
        },
        feasible: s.feasible,
        converged: s.converged,
    })
}

/// Minimizes the joint-measurement error over the free auxiliary parameters.
///
/// When no grid point is feasible the least-violation point is reported with
/// `feasible = false` in report-only mode; strict mode returns
/// [`Error::Infeasible`] with the minimal violation instead.
pub fn optimize(
    params: &ScenarioParams,
    constraints: &ConstraintSet,
    config: &OptimizerConfig,
) -> Result<OptimizationResult> {
    let s = search(params, constraints, config)?;
    if !s.feasible && constraints.e_mode == ConstraintMode::Strict {
        return Err(Error::Infeasible {
            violation: s.violation,
        });
    }
    assemble(params, constraints, &s)
}

/// Like [`optimize`] but never fails on infeasibility: the least-violation
/// point is returned with `feasible = false`.
pub fn optimize_lenient(
    params: &ScenarioParams,
    constraints: &ConstraintSet,
    config: &OptimizerConfig,
) -> Result<OptimizationResult> {
    let s = search(params, constraints, config)?;
    assemble(params, constraints, &s)
}

/// `p_npovm − p_povm` at the constrained optimum.
pub fn delta_p(
    params: &ScenarioParams,
    constraints: &ConstraintSet,
    config: &OptimizerConfig,
) -> Result<f64> {
    Ok(optimize(params, constraints, config)?.delta_p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepAxis {
    pub name: String,
    pub values: Vec<f64>,
}

impl SweepAxis {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }

    /// `n` evenly spaced values from `lo` to `hi` inclusive.
    pub fn linspace(name: impl Into<String>, lo: f64, hi: f64, n: usize) -> Self {
        let values = if n == 1 {
            vec![lo]
        } else {
            (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect()
        };
        Self::new(name, values)
    }
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    /// Position along each axis.
    pub index: Vec<usize>,
    pub coords: Vec<f64>,
    /// Invalid grid points (e.g. unphysical Bloch vectors) keep their error.
    pub outcome: Result<OptimizationResult>,
}

#[derive(Clone, Debug)]
pub struct SweepTable {
    pub axes: Vec<SweepAxis>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn ok_rows(&self) -> impl Iterator<Item = (&SweepRow, &OptimizationResult)> {
        self.rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().ok().map(|o| (r, o)))
    }
}

/// Optimizes every point of the axis grid, rows in lexicographic order (first
/// axis slowest). `template` maps axis coordinates to a scenario and its bounds.
pub fn sweep<F>(
    axes: Vec<SweepAxis>,
    template: F,
    config: &OptimizerConfig,
    cap: usize,
) -> Result<SweepTable>
where
    F: Fn(&[f64]) -> Result<(ScenarioParams, ConstraintSet)> + Sync,
{
    config.validate()?;
    if axes.is_empty() || axes.iter().any(|a| a.values.is_empty()) {
        return invalid("sweep axes must be nonempty");
    }
    let total = axes
        .iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.values.len()))
        .unwrap_or(usize::MAX);
    if total > cap {
        return invalid(format!("sweep has {total} points, cap is {cap}"));
    }
    let lens: Vec<usize> = axes.iter().map(|a| a.values.len()).collect();
    let rows: Vec<SweepRow> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut index = vec![0; lens.len()];
            let mut rem = flat;
            for k in (0..lens.len()).rev() {
                index[k] = rem % lens[k];
                rem /= lens[k];
            }
            let coords: Vec<f64> = index
                .iter()
                .zip(&axes)
                .map(|(i, a)| a.values[*i])
                .collect();
            let outcome = template(&coords)
                .and_then(|(p, c)| optimize_lenient(&p, &c, config));
            SweepRow {
                index,
                coords,
                outcome,
            }
        })
        .collect();
    Ok(SweepTable { axes, rows })
}
