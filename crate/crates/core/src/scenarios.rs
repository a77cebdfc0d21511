//! Joint-state families and their closed-form error expressions.
//!
//! Every family extends a pair of target qubits `(ρ_B, σ_B)` to two-qubit
//! states `(ρ_AB, σ_AB)` whose auxiliary factor A is parametrized by the free
//! angles `θ` (and `φ` where the two auxiliaries differ). The closed forms in
//! this module serve as oracles for the numeric optimizer.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, partial_trace, tensor_ket, tensor_product, ComplexMatrix, Subsystem};
use crate::measures::{self, ProbabilityValue};
use crate::qstate::{
    bloch_to_density, orthogonal_complement, primed_basis, pure_from_angle, wrap_angle,
    BlochVector, DensityMatrix, PureQubit,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScenarioId {
    Example,
    CaseI,
    CaseII,
    CaseIII,
    CaseIV,
    CaseIVProduct,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 6] = [
        ScenarioId::Example,
        ScenarioId::CaseI,
        ScenarioId::CaseII,
        ScenarioId::CaseIII,
        ScenarioId::CaseIV,
        ScenarioId::CaseIVProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::Example => "example",
            ScenarioId::CaseI => "case1",
            ScenarioId::CaseII => "case2",
            ScenarioId::CaseIII => "case3",
            ScenarioId::CaseIV => "case4",
            ScenarioId::CaseIVProduct => "case4-product",
        }
    }

    /// How `D(ρ_A, σ_A)` is measured for this family.
    pub fn distance_kind(self) -> DistanceKind {
        match self {
            ScenarioId::CaseIII | ScenarioId::CaseIV => DistanceKind::TraceNorm,
            _ => DistanceKind::TraceDistance,
        }
    }

    pub fn free_names(self) -> &'static [&'static str] {
        match self {
            ScenarioId::CaseIV => &["theta"],
            _ => &["theta", "phi"],
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let id = match s.to_ascii_lowercase().as_str() {
            "example" | "example1" => ScenarioId::Example,
            "case1" | "casei" => ScenarioId::CaseI,
            "case2" | "caseii" => ScenarioId::CaseII,
            "case3" | "caseiii" => ScenarioId::CaseIII,
            "case4" | "caseiv" => ScenarioId::CaseIV,
            "case4-product" | "case4product" | "caseivproduct" => ScenarioId::CaseIVProduct,
            other => return invalid(format!("unknown scenario '{other}'")),
        };
        Ok(id)
    }
}

/// Distinguishability functional on the auxiliary marginals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceKind {
    /// `½‖ρ_A − σ_A‖₁`
    TraceDistance,
    /// `‖ρ_A − σ_A‖₁`
    TraceNorm,
}

/// Non-fatal conditions attached to parameters or closed-form values.
#[derive(Clone, Debug, PartialEq)]
pub enum Flag {
    /// `d = 1` makes the constrained problem trivial.
    TrivialBound,
    /// Both targets are the same state.
    IdenticalTargets,
    /// An angle was outside its documented range and was wrapped.
    WrappedAngle { name: &'static str, from: f64, to: f64 },
    /// An angle is outside its documented range even after wrapping.
    OutsideRange { name: &'static str, value: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Flagged<T> {
    pub value: T,
    pub flags: Vec<Flag>,
}

/// Fixed (non-optimized) parameters of a joint-state family.
#[derive(Clone, Debug, PartialEq)]
pub enum ScenarioParams {
    /// Targets `|0⟩` and `|+⟩`.
    Example,
    CaseI { chi: f64, delta: f64 },
    CaseII { m: BlochVector, n: BlochVector },
    CaseIII { lambda: f64, mu: f64 },
    CaseIV { lambda: f64, mu: f64, x: f64, y: f64 },
    CaseIVProduct { lambda: f64, mu: f64, x: f64, y: f64 },
}

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        invalid(format!("{name} = {v} must lie in (0, 1)"))
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        invalid(format!("{name} must be finite"))
    }
}

fn normalize_angle(name: &'static str, v: &mut f64, period: f64, upper: f64, flags: &mut Vec<Flag>) {
    let inside = |a: f64| (0.0..=upper).contains(&a);
    if inside(*v) {
        return;
    }
    let (w, _) = wrap_angle(*v, period);
    flags.push(Flag::WrappedAngle { name, from: *v, to: w });
    *v = w;
    if !inside(w) {
        flags.push(Flag::OutsideRange { name, value: w });
    }
}

impl ScenarioParams {
    pub fn id(&self) -> ScenarioId {
        match self {
            ScenarioParams::Example => ScenarioId::Example,
            ScenarioParams::CaseI { .. } => ScenarioId::CaseI,
            ScenarioParams::CaseII { .. } => ScenarioId::CaseII,
            ScenarioParams::CaseIII { .. } => ScenarioId::CaseIII,
            ScenarioParams::CaseIV { .. } => ScenarioId::CaseIV,
            ScenarioParams::CaseIVProduct { .. } => ScenarioId::CaseIVProduct,
        }
    }

    /// Checks hard ranges and wraps angles into their documented intervals
    /// (`[0, π/2]` for Bloch angles, `[0, 2π]` for the phase `y`).
    pub fn normalized(&self) -> Result<Flagged<ScenarioParams>> {
        let mut p = self.clone();
        let mut flags = Vec::new();
        match &mut p {
            ScenarioParams::Example => {}
            ScenarioParams::CaseI { chi, delta } => {
                check_finite("chi", *chi)?;
                check_finite("delta", *delta)?;
                normalize_angle("chi", chi, PI, FRAC_PI_2, &mut flags);
                normalize_angle("delta", delta, PI, FRAC_PI_2, &mut flags);
                if (*chi - *delta).abs() < 1e-15 {
                    flags.push(Flag::IdenticalTargets);
                }
            }
            ScenarioParams::CaseII { m, n } => {
                m.validate()?;
                n.validate()?;
                if m.distance(n) < 1e-15 {
                    flags.push(Flag::IdenticalTargets);
                }
            }
            ScenarioParams::CaseIII { lambda, mu } => {
                check_open_unit("lambda", *lambda)?;
                check_open_unit("mu", *mu)?;
                if lambda == mu {
                    flags.push(Flag::IdenticalTargets);
                }
            }
            ScenarioParams::CaseIV { lambda, mu, x, y }
            | ScenarioParams::CaseIVProduct { lambda, mu, x, y } => {
                check_open_unit("lambda", *lambda)?;
                check_open_unit("mu", *mu)?;
                check_finite("x", *x)?;
                check_finite("y", *y)?;
                normalize_angle("x", x, PI, FRAC_PI_2, &mut flags);
                normalize_angle("y", y, 2.0 * PI, 2.0 * PI, &mut flags);
            }
        }
        Ok(Flagged { value: p, flags })
    }

    /// Named fixed parameters, in a stable order.
    pub fn fixed(&self) -> Vec<(&'static str, f64)> {
        match self {
            ScenarioParams::Example => vec![],
            ScenarioParams::CaseI { chi, delta } => vec![("chi", *chi), ("delta", *delta)],
            ScenarioParams::CaseII { m, n } => vec![
                ("m_x", m.x),
                ("m_y", m.y),
                ("m_z", m.z),
                ("n_x", n.x),
                ("n_y", n.y),
                ("n_z", n.z),
            ],
            ScenarioParams::CaseIII { lambda, mu } => vec![("lambda", *lambda), ("mu", *mu)],
            ScenarioParams::CaseIV { lambda, mu, x, y }
            | ScenarioParams::CaseIVProduct { lambda, mu, x, y } => {
                vec![("lambda", *lambda), ("mu", *mu), ("x", *x), ("y", *y)]
            }
        }
    }

    pub fn free_names(&self) -> &'static [&'static str] {
        self.id().free_names()
    }

    /// Box domain of each free parameter.
    pub fn free_bounds(&self) -> Vec<(f64, f64)> {
        self.free_names().iter().map(|_| (0.0, FRAC_PI_2)).collect()
    }

    /// Builds the joint pair at a point of the free parameters.
    pub fn build(&self, free: &[f64]) -> Result<JointStatePair> {
        let want = self.free_names().len();
        if free.len() != want {
            return invalid(format!(
                "{} takes {want} free parameter(s), got {}",
                self.id(),
                free.len()
            ));
        }
        match self {
            ScenarioParams::Example => Ok(build_example(free[0], free[1])),
            ScenarioParams::CaseI { chi, delta } => Ok(build_case1(free[0], free[1], *chi, *delta)),
            ScenarioParams::CaseII { m, n } => build_case2(free[0], free[1], m, n),
            ScenarioParams::CaseIII { lambda, mu } => build_case3(free[0], free[1], *lambda, *mu),
            ScenarioParams::CaseIV { lambda, mu, x, y } => build_case4(free[0], *lambda, *mu, *x, *y),
            ScenarioParams::CaseIVProduct { lambda, mu, x, y } => {
                build_case4_product(free[0], free[1], *lambda, *mu, *x, *y)
            }
        }
    }

    /// The targets `(ρ_B, σ_B)`, which do not depend on the free parameters.
    pub fn targets(&self) -> Result<(DensityMatrix, DensityMatrix)> {
        let zeros: Vec<f64> = vec![0.0; self.free_names().len()];
        let pair = self.build(&zeros)?;
        Ok((pair.rho_b, pair.sigma_b))
    }

    /// Conventional Helstrom error on the targets.
    pub fn povm_error(&self) -> Result<ProbabilityValue> {
        let (rb, sb) = self.targets()?;
        measures::helstrom_error(&rb, &sb)
    }
}

/// A pair of two-qubit extensions together with their marginals.
#[derive(Clone, Debug)]
pub struct JointStatePair {
    pub scenario: ScenarioId,
    pub rho_ab: DensityMatrix,
    pub sigma_ab: DensityMatrix,
    pub rho_a: DensityMatrix,
    pub sigma_a: DensityMatrix,
    pub rho_b: DensityMatrix,
    pub sigma_b: DensityMatrix,
    kets: Option<([C64; 4], [C64; 4])>,
}

impl JointStatePair {
    fn from_joint(scenario: ScenarioId, rho_ab: ComplexMatrix, sigma_ab: ComplexMatrix) -> Self {
        let marg = |m: &ComplexMatrix, keep| {
            DensityMatrix::from_trusted(partial_trace(m, keep).expect("4×4 joint operator"))
        };
        Self {
            scenario,
            rho_a: marg(&rho_ab, Subsystem::A),
            sigma_a: marg(&sigma_ab, Subsystem::A),
            rho_b: marg(&rho_ab, Subsystem::B),
            sigma_b: marg(&sigma_ab, Subsystem::B),
            rho_ab: DensityMatrix::from_trusted(rho_ab),
            sigma_ab: DensityMatrix::from_trusted(sigma_ab),
            kets: None,
        }
    }

    fn from_kets(scenario: ScenarioId, psi: [C64; 4], phi: [C64; 4]) -> Self {
        let rho = ComplexMatrix::projector(&psi).expect("4-component ket");
        let sigma = ComplexMatrix::projector(&phi).expect("4-component ket");
        let mut pair = Self::from_joint(scenario, rho, sigma);
        pair.kets = Some((psi, phi));
        pair
    }

    /// Both joint states are pure with known kets.
    pub fn is_pure_extension(&self) -> bool {
        self.kets.is_some()
    }

    pub fn kets(&self) -> Option<&([C64; 4], [C64; 4])> {
        self.kets.as_ref()
    }

    /// `‖ρ_AB − σ_AB‖₁`.
    pub fn joint_trace_norm(&self) -> Result<f64> {
        measures::trace_norm_distance(&self.rho_ab, &self.sigma_ab)
    }

    /// `½ − ¼‖ρ_AB − σ_AB‖₁`, the error of the optimal joint projective measurement.
    pub fn objective(&self) -> Result<f64> {
        Ok(measures::error_from_trace_norm(self.joint_trace_norm()?).value())
    }

    /// Helstrom error on the targets `ρ_B`, `σ_B`.
    pub fn povm_error(&self) -> Result<ProbabilityValue> {
        measures::helstrom_error(&self.rho_b, &self.sigma_b)
    }

    /// `D(ρ_A, σ_A)` under this family's distance convention.
    pub fn aux_distance(&self) -> Result<f64> {
        let tn = measures::trace_norm_distance(&self.rho_a, &self.sigma_a)?;
        Ok(match self.scenario.distance_kind() {
            DistanceKind::TraceDistance => 0.5 * tn,
            DistanceKind::TraceNorm => tn,
        })
    }

    /// Concurrences of `(ρ_AB, σ_AB)`; product constructions are separable.
    pub fn concurrences(&self) -> Result<(f64, f64)> {
        match &self.kets {
            Some((psi, phi)) => Ok((measures::concurrence_pure(psi)?, measures::concurrence_pure(phi)?)),
            None => Ok((0.0, 0.0)),
        }
    }
}

fn ket_product(a: &PureQubit, b: &PureQubit) -> [C64; 4] {
    tensor_ket(a.amplitudes(), b.amplitudes())
}

/// `|ψ(θ)⟩|0⟩` versus `|φ(φ)⟩|+⟩`.
pub fn build_example(theta: f64, phi: f64) -> JointStatePair {
    let mut pair = build_case1(theta, phi, 0.0, FRAC_PI_4);
    pair.scenario = ScenarioId::Example;
    pair
}

/// `|ψ(θ)⟩|χ⟩` versus `|φ(φ)⟩|δ⟩` with `|χ⟩ = cos χ|0⟩ + sin χ|1⟩`.
pub fn build_case1(theta: f64, phi: f64, chi: f64, delta: f64) -> JointStatePair {
    let psi = ket_product(&pure_from_angle(theta), &pure_from_angle(chi));
    let phi_ket = ket_product(&pure_from_angle(phi), &pure_from_angle(delta));
    JointStatePair::from_kets(ScenarioId::CaseI, psi, phi_ket)
}

fn product_with_mixed(aux: &PureQubit, target: &DensityMatrix) -> ComplexMatrix {
    tensor_product(&aux.projector(), target.matrix()).expect("2×2 factors")
}

/// `|ψ⟩⟨ψ| ⊗ (I + m·σ)/2` versus `|φ⟩⟨φ| ⊗ (I + n·σ)/2`.
pub fn build_case2(theta: f64, phi: f64, m: &BlochVector, n: &BlochVector) -> Result<JointStatePair> {
    let rb = bloch_to_density(m)?;
    let sb = bloch_to_density(n)?;
    Ok(JointStatePair::from_joint(
        ScenarioId::CaseII,
        product_with_mixed(&pure_from_angle(theta), &rb),
        product_with_mixed(&pure_from_angle(phi), &sb),
    ))
}

fn schmidt_ket(weight: f64, a0: &PureQubit, b0: &PureQubit, a1: &PureQubit, b1: &PureQubit) -> [C64; 4] {
    let first = ket_product(a0, b0);
    let second = ket_product(a1, b1);
    let (s0, s1) = (weight.sqrt(), (1.0 - weight).sqrt());
    std::array::from_fn(|i| first[i] * s0 + second[i] * s1)
}

/// `√λ|ψ⟩|0⟩ + √(1−λ)|ψ⊥⟩|1⟩` versus `√µ|φ⟩|0⟩ + √(1−µ)|φ⊥⟩|1⟩`.
pub fn build_case3(theta: f64, phi: f64, lambda: f64, mu: f64) -> Result<JointStatePair> {
    check_open_unit("lambda", lambda)?;
    check_open_unit("mu", mu)?;
    let (zero, one) = (pure_from_angle(0.0), pure_from_angle(FRAC_PI_2));
    let psi = schmidt_ket(lambda, &pure_from_angle(theta), &zero, &orthogonal_complement(theta), &one);
    let phi_ket = schmidt_ket(mu, &pure_from_angle(phi), &zero, &orthogonal_complement(phi), &one);
    Ok(JointStatePair::from_kets(ScenarioId::CaseIII, psi, phi_ket))
}

/// Shared Schmidt basis `{|ψ⟩, |ψ⊥⟩}` on A; `σ_AB` uses the primed basis on B.
pub fn build_case4(theta: f64, lambda: f64, mu: f64, x: f64, y: f64) -> Result<JointStatePair> {
    check_open_unit("lambda", lambda)?;
    check_open_unit("mu", mu)?;
    check_finite("x", x)?;
    check_finite("y", y)?;
    let (zero, one) = (pure_from_angle(0.0), pure_from_angle(FRAC_PI_2));
    let (zp, op) = primed_basis(x, y);
    let (a, a_perp) = (pure_from_angle(theta), orthogonal_complement(theta));
    let psi = schmidt_ket(lambda, &a, &zero, &a_perp, &one);
    let phi = schmidt_ket(mu, &a, &zp, &a_perp, &op);
    Ok(JointStatePair::from_kets(ScenarioId::CaseIV, psi, phi))
}

/// `|ψ(θ)⟩⟨ψ(θ)| ⊗ diag(λ, 1−λ)` versus `|φ(φ)⟩⟨φ(φ)| ⊗ σ_B(µ, x, y)`.
pub fn build_case4_product(
    theta: f64,
    phi: f64,
    lambda: f64,
    mu: f64,
    x: f64,
    y: f64,
) -> Result<JointStatePair> {
    check_open_unit("lambda", lambda)?;
    check_open_unit("mu", mu)?;
    let rb = DensityMatrix::from_trusted(ComplexMatrix::from_real_diag(&[lambda, 1.0 - lambda])?);
    let sb = case4_sigma_b(mu, x, y)?;
    Ok(JointStatePair::from_joint(
        ScenarioId::CaseIVProduct,
        product_with_mixed(&pure_from_angle(theta), &rb),
        product_with_mixed(&pure_from_angle(phi), &sb),
    ))
}

/// Coefficients `(a, b, c)` of the Case IV target `σ_B = [[c, a−ib], [a+ib, 1−c]]`.
pub fn case4_abc(mu: f64, x: f64, y: f64) -> (f64, f64, f64) {
    let off = C64::from_polar(1.0, -y) * ((2.0 * x).sin() * (2.0 * mu - 1.0) / 2.0);
    let c = x.sin().powi(2) + mu * (2.0 * x).cos();
    // off = a − ib
    (off.re, -off.im, c)
}

pub fn case4_sigma_b(mu: f64, x: f64, y: f64) -> Result<DensityMatrix> {
    check_open_unit("mu", mu)?;
    check_finite("x", x)?;
    check_finite("y", y)?;
    let (a, b, c) = case4_abc(mu, x, y);
    let m = ComplexMatrix::from_entries(&[
        C64::new(c, 0.0),
        C64::new(a, -b),
        C64::new(a, b),
        C64::new(1.0 - c, 0.0),
    ])?;
    Ok(DensityMatrix::from_trusted(m))
}

fn check_bound(d: f64) -> Result<Vec<Flag>> {
    if !(0.0..=1.0).contains(&d) {
        return invalid(format!("distinguishability bound d = {d} outside [0, 1]"));
    }
    Ok(if d == 1.0 { vec![Flag::TrivialBound] } else { vec![] })
}

/// `½(1 − √((1+d²)/2))`, the constrained optimum for the `|0⟩`/`|+⟩` example.
pub fn analytic_example_error(d: f64) -> Result<Flagged<ProbabilityValue>> {
    let flags = check_bound(d)?;
    Ok(Flagged {
        value: ProbabilityValue::clamped(0.5 * (1.0 - ((1.0 + d * d) / 2.0).sqrt())),
        flags,
    })
}

/// `½ − ½√(d²cos²(δ−χ) + sin²(δ−χ))` for pure targets `|χ⟩`, `|δ⟩`.
pub fn analytic_case1_error(d: f64, chi: f64, delta: f64) -> Result<Flagged<ProbabilityValue>> {
    let mut flags = check_bound(d)?;
    check_finite("chi", chi)?;
    check_finite("delta", delta)?;
    let g = delta - chi;
    if g.sin().abs() < 1e-15 {
        flags.push(Flag::IdenticalTargets);
    }
    let inner = d * d * g.cos().powi(2) + g.sin().powi(2);
    Ok(Flagged {
        value: ProbabilityValue::clamped(0.5 - 0.5 * inner.sqrt()),
        flags,
    })
}

/// Subadditivity-based lower bound for Case II; `raw` may be negative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerBound {
    pub clamped: ProbabilityValue,
    pub raw: f64,
}

/// `max(0, ½ − ¼(d + |m − n|))`.
pub fn case2_lower_bound(d: f64, m: &BlochVector, n: &BlochVector) -> Result<LowerBound> {
    check_bound(d)?;
    m.validate()?;
    n.validate()?;
    let raw = 0.5 - 0.25 * (d + m.distance(n));
    Ok(LowerBound {
        clamped: ProbabilityValue::clamped(raw),
        raw,
    })
}

/// Rotates a Bloch pair to the plane form `m = (0, 0, |m|)`, `n = (p, 0, n_z)`
/// with `p ≥ 0`, preserving both norms and the angle between them.
pub fn case2_canonicalize(m: &BlochVector, n: &BlochVector) -> Result<(BlochVector, BlochVector)> {
    m.validate()?;
    n.validate()?;
    let (mm, nn) = (m.norm(), n.norm());
    if mm < 1e-15 {
        return Ok((BlochVector { x: 0.0, y: 0.0, z: 0.0 }, BlochVector { x: 0.0, y: 0.0, z: nn }));
    }
    let along = (m.x * n.x + m.y * n.y + m.z * n.z) / mm;
    let perp = (nn * nn - along * along).max(0.0).sqrt();
    Ok((
        BlochVector { x: 0.0, y: 0.0, z: mm },
        BlochVector { x: perp, y: 0.0, z: along },
    ))
}

/// `½[1 − √((λ−c)² + a² + b²)]`, the Helstrom error of the Case IV targets.
pub fn case4_povm_error(lambda: f64, mu: f64, x: f64, y: f64) -> Result<ProbabilityValue> {
    check_open_unit("lambda", lambda)?;
    check_open_unit("mu", mu)?;
    check_finite("x", x)?;
    check_finite("y", y)?;
    let (a, b, c) = case4_abc(mu, x, y);
    let r = ((lambda - c).powi(2) + a * a + b * b).sqrt();
    Ok(ProbabilityValue::clamped(0.5 * (1.0 - r)))
}

/// `√(3 − cos 2Δ)`, the example's joint trace norm at `Δ = θ − φ`.
pub fn example_joint_trace_norm(dtheta: f64) -> f64 {
    (3.0 - (2.0 * dtheta).cos()).sqrt()
}

/// `{−h, 0, 0, h}` with `h = ½√(3 − cos 2Δ)`, ascending.
pub fn example_joint_spectrum(dtheta: f64) -> [f64; 4] {
    let h = 0.5 * example_joint_trace_norm(dtheta);
    [-h, 0.0, 0.0, h]
}

/// Spectrum of `ρ_AB − σ_AB` for the example, computed numerically.
pub fn example_numeric_spectrum(theta: f64, phi: f64) -> Result<Vec<f64>> {
    let pair = build_example(theta, phi);
    linalg::hermitian_eigenvalues(&(pair.rho_ab.matrix() - pair.sigma_ab.matrix()))
}
