//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsd_core::linalg::{
    hermitian_eigensystem, partial_trace, tensor_ket, tensor_product, trace_norm, ComplexMatrix,
    Subsystem,
};
use qsd_core::mcsim::simulate;
use qsd_core::measures::{concurrence_pure, schmidt_concurrence, trace_norm_distance};
use qsd_core::optimizer::{optimize, sweep, ConstraintMode, ConstraintSet, OptimizerConfig, SweepAxis};
use qsd_core::qstate::{bloch_to_density, BlochVector, DensityMatrix, PureQubit};
use qsd_core::scenarios::{
    analytic_case1_error, analytic_example_error, build_case4, case2_lower_bound,
    case4_povm_error, example_joint_spectrum, example_numeric_spectrum,
};
use qsd_core::{OptimizationResult, ScenarioParams, SweepTable};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cfg() -> OptimizerConfig {
    OptimizerConfig::default()
}

fn dist(d: f64) -> ConstraintSet {
    ConstraintSet::distinguishability(d).unwrap()
}

fn run_sweep<F>(axes: Vec<SweepAxis>, template: F) -> SweepTable
where
    F: Fn(&[f64]) -> qsd_core::Result<(ScenarioParams, ConstraintSet)> + Sync,
{
    sweep(axes, template, &cfg(), usize::MAX).unwrap()
}

fn all_ok(table: &SweepTable) -> Vec<(&[f64], &[usize], &OptimizationResult)> {
    table
        .rows
        .iter()
        .map(|r| {
            let o = r.outcome.as_ref().unwrap_or_else(|e| panic!("row {:?}: {e}", r.coords));
            (r.coords.as_slice(), r.index.as_slice(), o)
        })
        .collect()
}

fn random_bloch(rng: &mut ChaCha8Rng) -> BlochVector {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        if v.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return BlochVector::new(v[0], v[1], v[2]).unwrap();
        }
    }
}

fn example_curve() -> Outcome {
    let mut worst = 0.0f64;
    let mut values = Vec::new();
    for k in 0..10 {
        let d = k as f64 / 10.0;
        let v = optimize(&ScenarioParams::Example, &dist(d), &cfg()).unwrap().p_npovm.value();
        let want = 0.5 * (1.0 - ((1.0 + d * d) / 2.0).sqrt());
        worst = worst.max((v - want).abs());
        values.push(v);
    }
    let at_zero = (values[0] - 0.146_447).abs();
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    outcome(
        worst <= 1e-4 && at_zero <= 1e-4 && decreasing,
        format!("max |err| {worst:.2e}, P(0) = {:.6}, strictly decreasing: {decreasing}", values[0]),
    )
}

fn pure_product_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let mut worst = 0.0f64;
    let mut worst_special = 0.0f64;
    for _ in 0..50 {
        let d: f64 = rng.gen_range(0.0..=1.0);
        let chi = rng.gen_range(0.0..=FRAC_PI_2);
        let delta = rng.gen_range(0.0..=FRAC_PI_2);
        let p = ScenarioParams::CaseI { chi, delta };
        let v = optimize(&p, &dist(d), &cfg()).unwrap().p_npovm.value();
        worst = worst.max((v - analytic_case1_error(d, chi, delta).unwrap().value.value()).abs());
        let special = analytic_case1_error(d, 0.0, FRAC_PI_4).unwrap().value.value();
        worst_special = worst_special.max((special - analytic_example_error(d).unwrap().value.value()).abs());
    }
    outcome(
        worst <= 1e-4 && worst_special <= 1e-6,
        format!("max |optimizer − closed form| {worst:.2e}; special case gap {worst_special:.1e}"),
    )
}

fn pure_product_surface() -> Outcome {
    let n = 51;
    let table = run_sweep(
        vec![
            SweepAxis::linspace("chi", 0.0, FRAC_PI_2, n),
            SweepAxis::linspace("delta", 0.0, FRAC_PI_2, n),
        ],
        |c| Ok((ScenarioParams::CaseI { chi: c[0], delta: c[1] }, dist(0.4))),
    );
    let rows = all_ok(&table);
    let max_dp = rows.iter().map(|(_, _, r)| r.delta_p).fold(f64::MIN, f64::max);
    let mut strict_checked = 0;
    let mut strict_failed = 0;
    for (c, _, r) in &rows {
        if (c[1] - c[0]).abs() <= FRAC_PI_2 - 0.05 {
            strict_checked += 1;
            if r.delta_p >= -1e-4 {
                strict_failed += 1;
            }
        }
    }
    outcome(
        rows.len() == n * n && max_dp <= 1e-6 && strict_failed == 0,
        format!("max ΔP {max_dp:.3e}; ΔP < −1e−4 fails at {strict_failed}/{strict_checked} interior points"),
    )
}

fn mixed_product_sandwich() -> Outcome {
    let d = 0.6;
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let (mut lower_fail, mut upper_fail, mut strict_fail, mut valid_fail) = (0, 0, 0, 0);
    let mut worst_lower = 0.0f64;
    for _ in 0..200 {
        let m = random_bloch(&mut rng);
        let n = random_bloch(&mut rng);
        let r = optimize(&ScenarioParams::CaseII { m, n }, &dist(d), &cfg()).unwrap();
        let p = r.p_npovm.value();
        let bound = case2_lower_bound(d, &m, &n).unwrap().clamped.value();
        if p < bound - 1e-6 {
            lower_fail += 1;
            worst_lower = worst_lower.max(bound - p);
        }
        if p > r.p_povm.value() {
            upper_fail += 1;
        }
        let gap = m.distance(&n);
        let trivial = gap < 1e-12 || (2.0 - gap) < 1e-12;
        if !trivial && p >= r.p_povm.value() - 1e-4 {
            strict_fail += 1;
        }
        if p < (0.5 - 0.25 * (2.0 * d + gap)).max(0.0) - 1e-6 {
            valid_fail += 1;
        }
    }
    println!(
        "    info: with the auxiliary trace distance ≤ d the attainable bound is ½ − ¼(2d + |m − n|); violated at {valid_fail}/200"
    );
    outcome(
        lower_fail == 0 && upper_fail == 0 && strict_fail == 0,
        format!(
            "lower bound violated at {lower_fail}/200 (worst by {worst_lower:.3e}); upper at {upper_fail}/200; strict advantage missing at {strict_fail}/200"
        ),
    )
}

fn schmidt_grid() -> Outcome {
    let n = 41;
    let table = run_sweep(
        vec![
            SweepAxis::linspace("lambda", 0.05, 0.95, n),
            SweepAxis::linspace("mu", 0.05, 0.95, n),
        ],
        |c| {
            Ok((
                ScenarioParams::CaseIII { lambda: c[0], mu: c[1] },
                ConstraintSet::new(0.3, 0.1, ConstraintMode::ReportOnly)?,
            ))
        },
    );
    let rows = all_ok(&table);
    let nonneg = rows.iter().filter(|(_, _, r)| r.delta_p >= 0.0).count();
    let infeasible = rows.iter().filter(|(_, _, r)| r.slacks.d < -cfg().constraint_slack).count();
    let recorded = rows.iter().all(|(_, _, r)| r.slacks.e.is_finite());
    let (lo, hi) = rows
        .iter()
        .map(|(_, _, r)| r.slacks.e)
        .fold((f64::MAX, f64::MIN), |(a, b), s| (a.min(s), b.max(s)));
    println!("    info: {infeasible}/{} rows have no point with ‖ρ_A − σ_A‖₁ ≤ 0.3 (least-violation point reported)", rows.len());
    outcome(
        rows.len() == n * n && nonneg == 0 && recorded,
        format!("ΔP ≥ 0 at {nonneg}/{}; concurrence slack recorded on every row, range [{lo:.3}, {hi:.3}]", rows.len()),
    )
}

fn shared_basis_grid() -> Outcome {
    let (lambda, mu) = (0.25f64, 0.33f64);
    let n = 41;
    let d = 2.0 * (lambda - mu).abs();
    let axes = || {
        vec![
            SweepAxis::linspace("x", 0.0, FRAC_PI_2, n),
            SweepAxis::linspace("y", 0.0, 2.0 * PI, n),
        ]
    };
    let interior = |idx: &[usize]| idx.iter().all(|&i| i > 0 && i < n - 1);

    let mut formula_gap = 0.0f64;
    let mut theta_gap = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let x = FRAC_PI_2 * i as f64 / (n - 1) as f64;
            let y = 2.0 * PI * j as f64 / (n - 1) as f64;
            let pair = build_case4(0.0, lambda, mu, x, y).unwrap();
            let numeric = qsd_core::measures::helstrom_error(&pair.rho_b, &pair.sigma_b).unwrap().value();
            formula_gap = formula_gap.max((case4_povm_error(lambda, mu, x, y).unwrap().value() - numeric).abs());
            let base = pair.objective().unwrap();
            for k in 1..10 {
                let t = k as f64 * FRAC_PI_2 / 9.0;
                let o = build_case4(t, lambda, mu, x, y).unwrap().objective().unwrap();
                theta_gap = theta_gap.max((o - base).abs());
            }
        }
    }

    let shared = run_sweep(axes(), |c| {
        Ok((ScenarioParams::CaseIV { lambda, mu, x: c[0], y: c[1] }, dist(d)))
    });
    let shared_bad = all_ok(&shared)
        .iter()
        .filter(|(_, idx, r)| interior(idx) && r.delta_p >= 0.0)
        .count();
    let product = run_sweep(axes(), |c| {
        Ok((ScenarioParams::CaseIVProduct { lambda, mu, x: c[0], y: c[1] }, dist(0.16)))
    });
    let product_bad = all_ok(&product)
        .iter()
        .filter(|(_, idx, r)| interior(idx) && r.delta_p >= 0.0)
        .count();
    outcome(
        formula_gap <= 1e-10 && theta_gap <= 1e-10 && shared_bad == 0 && product_bad == 0,
        format!(
            "formula gap {formula_gap:.1e}; θ spread {theta_gap:.1e}; ΔP ≥ 0 at {shared_bad} shared / {product_bad} product interior points"
        ),
    )
}

fn monte_carlo() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fixed = vec![
        (ScenarioParams::Example, vec![0.4f64.asin(), 0.0]),
        (ScenarioParams::CaseI { chi: 0.2, delta: 1.1 }, vec![0.9, 0.3]),
        (
            ScenarioParams::CaseII {
                m: BlochVector::new(0.3, -0.2, 0.5).unwrap(),
                n: BlochVector::new(-0.1, 0.6, 0.2).unwrap(),
            },
            vec![0.7, 0.1],
        ),
        (ScenarioParams::CaseIII { lambda: 0.3, mu: 0.8 }, vec![1.2, 0.4]),
        (ScenarioParams::CaseIV { lambda: 0.25, mu: 0.33, x: 0.6, y: 2.0 }, vec![0.5]),
        (ScenarioParams::CaseIVProduct { lambda: 0.25, mu: 0.33, x: 0.6, y: 2.0 }, vec![0.4, 0.2]),
    ];
    let mut cases = fixed;
    for _ in 0..4 {
        let t = rng.gen_range(0.0..FRAC_PI_2);
        let f = rng.gen_range(0.0..FRAC_PI_2);
        let p = ScenarioParams::CaseIII { lambda: rng.gen_range(0.05..0.95), mu: rng.gen_range(0.05..0.95) };
        cases.push((p, vec![t, f]));
    }
    let mut worst_z = 0.0f64;
    let mut reproducible = true;
    for (k, (p, free)) in cases.iter().enumerate() {
        let pair = p.build(free).unwrap();
        let seed = 1000 + k as u64;
        let a = simulate(&pair, 1_000_000, seed).unwrap();
        let b = simulate(&pair, 1_000_000, seed).unwrap();
        reproducible &= a.errors == b.errors;
        let gap = (a.empirical_error - a.analytic_error.value()).abs();
        if a.standard_error > 0.0 {
            worst_z = worst_z.max(gap / a.standard_error);
        } else if gap > 1e-12 {
            worst_z = f64::INFINITY;
        }
    }
    outcome(
        worst_z <= 4.0 && reproducible,
        format!("{} scenarios; max |z| {worst_z:.2}; seeds reproduce: {reproducible}", cases.len()),
    )
}

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim).unwrap();
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    (&m + &m.adjoint()).scale_real(0.5)
}

fn random_unitary(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let es = hermitian_eigensystem(&random_hermitian(rng, 4)).unwrap();
    let mut u = ComplexMatrix::zeros(4).unwrap();
    for (j, v) in es.vectors.iter().enumerate() {
        for (i, z) in v.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

fn random_qubit(rng: &mut ChaCha8Rng) -> PureQubit {
    let a = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let b = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    PureQubit::new(a / n, b / n).unwrap()
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures: Vec<&str> = Vec::new();
    let mut check = |ok: bool, what: &'static str| {
        if !ok && !failures.contains(&what) {
            failures.push(what);
        }
    };

    for _ in 0..1000 {
        let a = random_hermitian(&mut rng, 4);
        let b = random_hermitian(&mut rng, 4);
        let (na, nb) = (trace_norm(&a).unwrap(), trace_norm(&b).unwrap());
        check(na >= 0.0, "nonnegativity");
        check((trace_norm(&-&a).unwrap() - na).abs() <= 1e-10, "symmetry");
        check(trace_norm(&(&a + &b)).unwrap() <= na + nb + 1e-10, "triangle inequality");
        let u = random_unitary(&mut rng);
        let rotated = &(&u * &a) * &u.adjoint();
        check((trace_norm(&rotated).unwrap() - na).abs() <= 1e-10, "unitary invariance");

        let (p, q) = (random_qubit(&mut rng), random_qubit(&mut rng));
        let tn = trace_norm_distance(&DensityMatrix::from_pure(&p), &DensityMatrix::from_pure(&q)).unwrap();
        let want = 2.0 * (1.0 - p.inner(&q).norm_sqr()).max(0.0).sqrt();
        check((tn - want).abs() <= 1e-10, "pure-state identity");

        let (x, y) = (random_hermitian(&mut rng, 2), random_hermitian(&mut rng, 2));
        let xy = tensor_product(&x, &y).unwrap();
        check(partial_trace(&xy, Subsystem::B).unwrap().max_abs_diff(&y.scale(x.trace())) <= 1e-12, "partial trace of tensor");
        check(partial_trace(&xy, Subsystem::A).unwrap().max_abs_diff(&x.scale(y.trace())) <= 1e-12, "partial trace of tensor");

        let lambda: f64 = rng.gen_range(0.0..=1.0);
        let a0 = random_qubit(&mut rng);
        let [c0, c1] = *a0.amplitudes();
        let perp = [-c1.conj(), c0.conj()];
        let zero = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let one = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        let (k0, k1) = (tensor_ket(a0.amplitudes(), &zero), tensor_ket(&perp, &one));
        let psi: [C64; 4] = std::array::from_fn(|i| k0[i] * lambda.sqrt() + k1[i] * (1.0 - lambda).sqrt());
        check(
            (concurrence_pure(&psi).unwrap() - schmidt_concurrence(lambda).unwrap()).abs() <= 1e-10,
            "concurrence agreement",
        );

        let states: Vec<DensityMatrix> =
            (0..4).map(|_| bloch_to_density(&random_bloch(&mut rng)).unwrap()).collect();
        let joint = |a: &DensityMatrix, b: &DensityMatrix| {
            DensityMatrix::new(tensor_product(a.matrix(), b.matrix()).unwrap()).unwrap()
        };
        let lhs = trace_norm_distance(&joint(&states[0], &states[1]), &joint(&states[2], &states[3])).unwrap();
        let rhs = trace_norm_distance(&states[0], &states[2]).unwrap() + trace_norm_distance(&states[1], &states[3]).unwrap();
        check(lhs <= rhs + 1e-10, "subadditivity");

        let t = rng.gen_range(0.0..FRAC_PI_2);
        let f = rng.gen_range(0.0..FRAC_PI_2);
        let numeric = example_numeric_spectrum(t, f).unwrap();
        let closed = example_joint_spectrum(t - f);
        check(numeric.iter().zip(closed).all(|(a, b)| (a - b).abs() <= 1e-10), "example spectrum");
    }

    let ds: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let monotone = |values: &[f64]| values.windows(2).all(|w| w[0] >= w[1] - 1e-6);
    for p in [
        ScenarioParams::Example,
        ScenarioParams::CaseI { chi: 0.3, delta: 1.2 },
        ScenarioParams::CaseII {
            m: BlochVector::new(0.2, 0.1, 0.6).unwrap(),
            n: BlochVector::new(-0.4, 0.3, -0.1).unwrap(),
        },
    ] {
        let v: Vec<f64> = ds.iter().map(|&d| optimize(&p, &dist(d), &cfg()).unwrap().p_npovm.value()).collect();
        check(monotone(&v), "monotone in d");
    }
    let es: Vec<f64> = (0..=10).map(|k| 0.2 + 0.08 * k as f64).collect();
    for (lambda, mu) in [(0.3, 0.6), (0.5, 0.8)] {
        let p = ScenarioParams::CaseIII { lambda, mu };
        let v: Vec<f64> = es
            .iter()
            .filter_map(|&e| optimize(&p, &ConstraintSet::new(1.0, e, ConstraintMode::Strict).unwrap(), &cfg()).ok())
            .map(|r| r.p_npovm.value())
            .collect();
        check(!v.is_empty() && monotone(&v), "monotone in E");
    }

    if failures.is_empty() {
        outcome(true, "metric axioms, unitary invariance, pure identity, partial trace, concurrence, subadditivity, spectrum, monotonicity")
    } else {
        outcome(false, format!("failed: {}", failures.join(", ")))
    }
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "example error curve", Duration::from_secs(10), example_curve),
        (2, "pure-product closed form", Duration::from_secs(60), pure_product_oracle),
        (3, "pure-product surface at d = 0.4", Duration::from_secs(300), pure_product_surface),
        (4, "mixed-product bound sandwich at d = 0.6", Duration::from_secs(300), mixed_product_sandwich),
        (5, "Schmidt family grid, report-only", Duration::from_secs(600), schmidt_grid),
        (6, "shared-basis family and product variant", Duration::from_secs(600), shared_basis_grid),
        (7, "Monte Carlo agreement", Duration::from_secs(300), monte_carlo),
        (8, "property suites", Duration::from_secs(120), property_suites),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id} [{}] {name}: {} ({:.1}s / {}s budget)",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
