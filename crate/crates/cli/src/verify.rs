//! Oracle checks run by `qsd verify`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::io::Write;

use qsd_core::mcsim::{helstrom_projectors, simulate};
use qsd_core::measures::{helstrom_pair, schmidt_concurrence, success_probability, trace_distance};
use qsd_core::optimizer::optimize;
use qsd_core::qstate::bloch_to_density;
use qsd_core::scenarios::{
    analytic_case1_error, analytic_example_error, build_example, case4_povm_error,
    example_joint_spectrum, example_joint_trace_norm, example_numeric_spectrum,
};
use qsd_core::{BlochVector, ConstraintSet, OptimizerConfig, ScenarioParams};

use crate::table::{format_value, TableError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Within,
    AtMost,
    AtLeast,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Within => "≈",
            Relation::AtMost => "≤",
            Relation::AtLeast => "≥",
        }
    }

    fn name(self) -> &'static str {
        match self {
            Relation::Within => "within",
            Relation::AtMost => "at_most",
            Relation::AtLeast => "at_least",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub got: f64,
    pub relation: Relation,
    pub expected: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, got: f64, relation: Relation, expected: f64, tolerance: f64) -> Self {
        Self { name: name.into(), got, relation, expected, tolerance }
    }

    pub fn passed(&self) -> bool {
        let (g, e, t) = (self.got, self.expected, self.tolerance);
        match self.relation {
            Relation::Within => (g - e).abs() <= t,
            Relation::AtMost => g <= e + t,
            Relation::AtLeast => g >= e - t,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {:.9} {} {:.9} (tol {})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.got,
            self.relation.symbol(),
            self.expected,
            if self.tolerance == 0.0 { "0".to_string() } else { format!("{:.0e}", self.tolerance) }
        )
    }
}

/// Test hooks; the defaults run the checks as shipped.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct VerifyOptions {
    /// Added to the closed-form example error before comparing.
    pub example_offset: f64,
}

fn dist(d: f64) -> qsd_core::Result<ConstraintSet> {
    ConstraintSet::distinguishability(d)
}

pub fn run_checks(opts: &VerifyOptions) -> qsd_core::Result<Vec<Check>> {
    use Relation::*;
    let cfg = OptimizerConfig::default();
    let mut out = Vec::new();

    let (err, succ) = {
        let (rho, sigma) = ScenarioParams::Example.targets()?;
        helstrom_pair(&rho, &sigma)?
    };
    out.push(Check::new("helstrom_zero_plus", err.value(), Within, 0.25 * (2.0 - 2f64.sqrt()), 1e-12));
    out.push(Check::new("success_plus_error", err.value() + succ.value(), Within, 1.0, 1e-12));

    for d in [0.0, 0.25, 0.5, 0.75] {
        let got = optimize(&ScenarioParams::Example, &dist(d)?, &cfg)?.p_npovm.value();
        let want = analytic_example_error(d)?.value.value() + opts.example_offset;
        out.push(Check::new(format!("example_optimum_d{d}"), got, Within, want, 1e-4));
    }
    for d in [0.1, 0.6] {
        let special = analytic_case1_error(d, 0.0, FRAC_PI_4)?.value.value();
        let example = analytic_example_error(d)?.value.value();
        out.push(Check::new(format!("case1_contains_example_d{d}"), special, Within, example, 1e-12));
    }

    let (t, f) = (0.9, 0.25);
    let spread = example_numeric_spectrum(t, f)?
        .iter()
        .zip(example_joint_spectrum(t - f))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    out.push(Check::new("example_spectrum", spread, AtMost, 0.0, 1e-10));
    out.push(Check::new("joint_norm_aligned", build_example(0.3, 0.3).joint_trace_norm()?, Within, 2f64.sqrt(), 1e-10));
    out.push(Check::new("joint_norm_orthogonal", build_example(FRAC_PI_2, 0.0).joint_trace_norm()?, Within, 2.0, 1e-10));
    out.push(Check::new("joint_norm_closed_form", example_joint_trace_norm(FRAC_PI_2), Within, 2.0, 1e-15));

    let (d, chi, delta) = (0.4, 0.3, 1.0);
    let got = optimize(&ScenarioParams::CaseI { chi, delta }, &dist(d)?, &cfg)?.p_npovm.value();
    out.push(Check::new("case1_optimum", got, Within, analytic_case1_error(d, chi, delta)?.value.value(), 1e-4));

    let m = BlochVector::new(0.2, -0.3, 0.5)?;
    let n = BlochVector::new(-0.4, 0.1, -0.2)?;
    let d = 0.6;
    let r = optimize(&ScenarioParams::CaseII { m, n }, &dist(d)?, &cfg)?;
    out.push(Check::new("case2_below_helstrom", r.p_npovm.value(), AtMost, r.p_povm.value(), 0.0));
    let floor = (0.5 - 0.25 * (2.0 * d + m.distance(&n))).max(0.0);
    out.push(Check::new("case2_subadditive_floor", r.p_npovm.value(), AtLeast, floor, 1e-6));

    let (lambda, mu, t, f): (f64, f64, f64, f64) = (0.3, 0.8, 1.2, 0.4);
    let k = (lambda * mu).sqrt() + ((1.0 - lambda) * (1.0 - mu)).sqrt();
    let c = (t - f).cos();
    let pair = ScenarioParams::CaseIII { lambda, mu }.build(&[t, f])?;
    out.push(Check::new("case3_overlap_form", pair.objective()?, Within, 0.5 - 0.5 * (1.0 - c * c * k * k).sqrt(), 1e-10));
    let (c_rho, _) = pair.concurrences()?;
    out.push(Check::new("case3_concurrence", c_rho, Within, schmidt_concurrence(lambda)?, 1e-10));

    let (lambda, mu, x, y) = (0.25, 0.33, 0.6, 2.0);
    let case4 = ScenarioParams::CaseIV { lambda, mu, x, y };
    out.push(Check::new("case4_formula", case4.povm_error()?.value(), Within, case4_povm_error(lambda, mu, x, y)?.value(), 1e-10));
    let a = case4.build(&[0.1])?.objective()?;
    let b = case4.build(&[1.3])?.objective()?;
    out.push(Check::new("case4_theta_invariance", a, Within, b, 1e-10));

    let bd = trace_distance(&bloch_to_density(&m)?, &bloch_to_density(&n)?)?;
    out.push(Check::new("bloch_distance", bd, Within, 0.5 * m.distance(&n), 1e-12));

    let pair = build_example(0.4f64.asin(), 0.0);
    let proj = helstrom_projectors(&pair)?;
    out.push(Check::new("projector_defect", proj.projector_defect(), AtMost, 0.0, 1e-10));
    let s = success_probability(&pair.rho_ab, &pair.sigma_ab, &proj.m0, &proj.m1, 0.5, 0.5)?;
    let (e, _) = helstrom_pair(&pair.rho_ab, &pair.sigma_ab)?;
    out.push(Check::new("projectors_attain_helstrom", s.value.value(), Within, 1.0 - e.value(), 1e-10));
    let sim = simulate(&pair, 200_000, 2024)?;
    out.push(Check::new("monte_carlo_z", sim.z_score.abs(), AtMost, 4.0, 0.0));

    Ok(out)
}

/// Human-readable report, one line per check plus a summary.
pub fn write_report<W: Write>(checks: &[Check], mut out: W) -> std::io::Result<()> {
    for c in checks {
        writeln!(out, "{c}")?;
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(out, "{} checks, {failed} failed", checks.len())
}

pub fn write_csv<W: Write>(checks: &[Check], out: W) -> Result<(), TableError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["check", "got", "relation", "expected", "tolerance", "passed"])?;
    for c in checks {
        w.write_record([
            c.name.clone(),
            format_value(c.got),
            c.relation.name().to_string(),
            format_value(c.expected),
            format_value(c.tolerance),
            c.passed().to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Check::new("a", 1.0, Relation::Within, 1.05, 0.1).passed());
        assert!(!Check::new("a", 1.2, Relation::Within, 1.0, 0.1).passed());
        assert!(Check::new("a", 0.5, Relation::AtMost, 0.5, 0.0).passed());
        assert!(!Check::new("a", 0.6, Relation::AtMost, 0.5, 0.0).passed());
        assert!(Check::new("a", 0.45, Relation::AtLeast, 0.5, 0.1).passed());
    }

    #[test]
    fn all_checks_pass_and_offset_breaks_them() {
        let checks = run_checks(&VerifyOptions::default()).unwrap();
        for c in &checks {
            assert!(c.passed(), "{c}");
        }
        let off = run_checks(&VerifyOptions { example_offset: 1e-3 }).unwrap();
        assert!(off.iter().any(|c| !c.passed()));
    }

    #[test]
    fn csv_has_one_row_per_check() {
        let checks = vec![Check::new("x", 0.1, Relation::Within, 0.1, 1e-9)];
        let mut buf = Vec::new();
        write_csv(&checks, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "check,got,relation,expected,tolerance,passed\nx,0.1,within,0.1,0.000000001,true\n");
    }
}
