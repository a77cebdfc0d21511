//! Distinguishability and entanglement functionals.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{invalid, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::qstate::DensityMatrix;

/// Slack allowed at the [0, 1] boundaries before a value is rejected.
pub const PROBABILITY_SLACK: f64 = 1e-12;
/// Out-of-range tolerance for Born-rule style evaluations with NPOVM elements.
pub const BORN_SLACK: f64 = 1e-9;
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// A probability in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ProbabilityValue(f64);

impl ProbabilityValue {
    pub fn new(p: f64) -> Result<Self> {
        Self::with_slack(p, PROBABILITY_SLACK)
    }

    /// Accepts values within `slack` of `[0, 1]` and clamps them.
    pub fn with_slack(p: f64, slack: f64) -> Result<Self> {
        if !p.is_finite() || p < -slack || p > 1.0 + slack {
            return invalid(format!("probability {p} outside [0, 1]"));
        }
        Ok(Self(p.clamp(0.0, 1.0)))
    }

    /// For closed forms whose range is guaranteed analytically.
    pub(crate) fn clamped(p: f64) -> Self {
        Self(p.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for ProbabilityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<ProbabilityValue> for f64 {
    fn from(p: ProbabilityValue) -> f64 {
        p.0
    }
}

fn difference(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ComplexMatrix> {
    rho.matrix().checked_sub(sigma.matrix())
}

/// `‖ρ − σ‖₁`.
pub fn trace_norm_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    linalg::trace_norm(&difference(rho, sigma)?)
}

/// `½‖ρ − σ‖₁`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(0.5 * trace_norm_distance(rho, sigma)?)
}

/// Equal-prior minimum error `½ − ¼‖ρ − σ‖₁`.
pub fn helstrom_error(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ProbabilityValue> {
    Ok(helstrom_pair(rho, sigma)?.0)
}

/// Equal-prior optimal success `1 − helstrom_error`.
pub fn helstrom_success(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ProbabilityValue> {
    Ok(helstrom_pair(rho, sigma)?.1)
}

/// `(error, success)` from a single trace-norm evaluation.
pub fn helstrom_pair(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<(ProbabilityValue, ProbabilityValue)> {
    let err = error_from_trace_norm(trace_norm_distance(rho, sigma)?);
    Ok((err, ProbabilityValue(1.0 - err.0)))
}

pub(crate) fn error_from_trace_norm(tn: f64) -> ProbabilityValue {
    ProbabilityValue::clamped(0.5 - 0.25 * tn)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuccessProbability {
    pub value: ProbabilityValue,
    /// Both elements are positive semidefinite, i.e. the pair is a POVM.
    pub valid_povm: bool,
}

/// `p0·Tr(ρ m0) + p1·Tr(σ m1)` for a two-outcome measurement that need not be positive.
pub fn success_probability(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    m0: &ComplexMatrix,
    m1: &ComplexMatrix,
    p0: f64,
    p1: f64,
) -> Result<SuccessProbability> {
    let dim = rho.dim();
    if sigma.dim() != dim || m0.dim() != dim || m1.dim() != dim {
        return invalid("states and measurement elements must share a dimension");
    }
    if !(0.0..=1.0).contains(&p0) || !(0.0..=1.0).contains(&p1) || (p0 + p1 - 1.0).abs() > 1e-12
    {
        return invalid(format!("priors ({p0}, {p1}) do not form a distribution"));
    }
    let completeness = (m0 + m1).max_abs_diff(&ComplexMatrix::identity(dim)?);
    if completeness > COMPLETENESS_TOL {
        return invalid(format!(
            "measurement elements do not sum to identity (defect {completeness:.3e})"
        ));
    }
    let t0 = (rho.matrix() * m0).trace();
    let t1 = (sigma.matrix() * m1).trace();
    let p = p0 * t0.re + p1 * t1.re;
    let value = ProbabilityValue::with_slack(p, BORN_SLACK)?;
    let positive = |m: &ComplexMatrix| {
        m.is_hermitian()
            && linalg::hermitian_eigenvalues(m)
                .map(|v| v[0] >= -COMPLETENESS_TOL)
                .unwrap_or(false)
    };
    Ok(SuccessProbability {
        value,
        valid_povm: positive(m0) && positive(m1),
    })
}

/// `|⟨ψ|ψ̃⟩|` with `|ψ̃⟩ = (σ_y ⊗ σ_y)|ψ*⟩`.
pub fn concurrence_pure(psi: &[C64; 4]) -> Result<f64> {
    let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (n - 1.0).abs() > 1e-12 {
        return invalid(format!("two-qubit ket not normalized (norm² = {n})"));
    }
    // σ_y ⊗ σ_y reverses the basis order with signs (−1, +1, +1, −1)
    const SIGNS: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let overlap: C64 = (0..4).map(|i| psi[i].conj() * psi[3 - i].conj() * SIGNS[i]).sum();
    Ok(overlap.norm().min(1.0))
}

/// `2√(λ(1−λ))` for Schmidt coefficient `λ`.
pub fn schmidt_concurrence(lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return invalid(format!("Schmidt coefficient {lambda} outside [0, 1]"));
    }
    Ok(2.0 * (lambda * (1.0 - lambda)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, tensor_ket, tensor_product};
    use crate::qstate::{orthogonal_complement, pure_from_angle};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_6};

    fn pure(t: f64) -> DensityMatrix {
        DensityMatrix::from_pure(&pure_from_angle(t))
    }

    #[test]
    fn trace_distance_examples() {
        assert_eq!(trace_distance(&pure(0.2), &pure(0.2)).unwrap(), 0.0);
        assert!((trace_distance(&pure(0.0), &pure(std::f64::consts::FRAC_PI_2)).unwrap() - 1.0).abs() < 1e-15);
        // |sin(θ−φ)| with θ−φ = π/6
        let d = trace_distance(&pure(0.9), &pure(0.9 - FRAC_PI_6)).unwrap();
        assert!((d - 0.5).abs() < 1e-14);
    }

    #[test]
    fn trace_distance_dimension_mismatch() {
        let two = pure(0.0);
        let four = DensityMatrix::from_ket(&tensor_ket(
            pure_from_angle(0.0).amplitudes(),
            pure_from_angle(0.0).amplitudes(),
        ))
        .unwrap();
        assert!(trace_distance(&two, &four).is_err());
    }

    #[test]
    fn helstrom_zero_vs_plus() {
        let (e, s) = helstrom_pair(&pure(0.0), &pure(FRAC_PI_4)).unwrap();
        assert!((e.value() - 0.146_446_609_4).abs() < 1e-9);
        assert!((s.value() - 0.853_553_390_6).abs() < 1e-9);
        assert_eq!(e.value() + s.value(), 1.0);
        assert_eq!(helstrom_error(&pure(0.3), &pure(0.3)).unwrap().value(), 0.5);
        let orth = helstrom_error(&pure(0.3), &DensityMatrix::from_pure(&orthogonal_complement(0.3)))
            .unwrap();
        assert!(orth.value().abs() < 1e-15);
    }

    #[test]
    fn success_probability_trivial_measurements() {
        let id = ComplexMatrix::identity(2).unwrap();
        let zero = ComplexMatrix::zeros(2).unwrap();
        let (r, s) = (pure(0.0), pure(FRAC_PI_4));
        let always = success_probability(&r, &s, &id, &zero, 0.5, 0.5).unwrap();
        assert_eq!(always.value.value(), 0.5);
        assert!(always.valid_povm);
        let half = id.scale_real(0.5);
        assert_eq!(
            success_probability(&r, &s, &half, &half, 0.5, 0.5).unwrap().value.value(),
            0.5
        );
    }

    #[test]
    fn success_probability_helstrom_projectors() {
        let (r, s) = (pure(0.0), pure(FRAC_PI_4));
        let es = linalg::hermitian_eigensystem(&(r.matrix() - s.matrix())).unwrap();
        let m0 = es.spectral_projector(|l| l > 0.0);
        let m1 = &ComplexMatrix::identity(2).unwrap() - &m0;
        let p = success_probability(&r, &s, &m0, &m1, 0.5, 0.5).unwrap();
        assert!((p.value.value() - 0.853_553_390_6).abs() < 1e-9);
    }

    #[test]
    fn success_probability_flags_non_positive_elements() {
        let (r, s) = (pure(0.0), pure(FRAC_PI_4));
        let m0 = ComplexMatrix::from_real_diag(&[1.2, -0.1]).unwrap();
        let m1 = &ComplexMatrix::identity(2).unwrap() - &m0;
        let p = success_probability(&r, &s, &m0, &m1, 0.5, 0.5).unwrap();
        assert!(!p.valid_povm);
    }

    #[test]
    fn success_probability_rejects_incomplete() {
        let (r, s) = (pure(0.0), pure(FRAC_PI_4));
        let id = ComplexMatrix::identity(2).unwrap();
        assert!(success_probability(&r, &s, &id, &id, 0.5, 0.5).is_err());
        let zero = ComplexMatrix::zeros(2).unwrap();
        assert!(success_probability(&r, &s, &id, &zero, 0.7, 0.5).is_err());
    }

    #[test]
    fn success_probability_out_of_range_is_error() {
        let (r, s) = (pure(0.0), pure(std::f64::consts::FRAC_PI_2));
        let m0 = ComplexMatrix::from_real_diag(&[3.0, 0.0]).unwrap();
        let m1 = &ComplexMatrix::identity(2).unwrap() - &m0;
        assert!(success_probability(&r, &s, &m0, &m1, 0.5, 0.5).is_err());
    }

    #[test]
    fn concurrence_examples() {
        let bell = [
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(FRAC_1_SQRT_2, 0.0),
        ];
        assert!((concurrence_pure(&bell).unwrap() - 1.0).abs() < 1e-15);
        let prod = tensor_ket(
            pure_from_angle(0.0).amplitudes(),
            pure_from_angle(FRAC_PI_4).amplitudes(),
        );
        assert!(concurrence_pure(&prod).unwrap() < 1e-15);
        let unnormalized = [C64::new(1.0, 0.0); 4];
        assert!(concurrence_pure(&unnormalized).is_err());
    }

    #[test]
    fn schmidt_concurrence_values() {
        assert_eq!(schmidt_concurrence(0.0).unwrap(), 0.0);
        assert_eq!(schmidt_concurrence(0.5).unwrap(), 1.0);
        assert!((schmidt_concurrence(0.25).unwrap() - 0.866_025_403_784_438_6).abs() < 1e-15);
        assert!(schmidt_concurrence(1.2).is_err());
        assert!(schmidt_concurrence(-0.1).is_err());
    }

    #[test]
    fn spin_flip_matches_explicit_operator() {
        let yy = tensor_product(&pauli::y(), &pauli::y()).unwrap();
        let raw = [C64::new(0.3, -0.2), C64::new(-0.5, 0.1), C64::new(0.2, 0.6), C64::new(0.1, -0.4)];
        let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi: [C64; 4] = std::array::from_fn(|i| raw[i] / n);
        let conj: Vec<C64> = psi.iter().map(|z| z.conj()).collect();
        let want = yy.apply(&conj).unwrap();
        let overlap: C64 = psi.iter().zip(&want).map(|(a, b)| a.conj() * b).sum();
        assert!((concurrence_pure(&psi).unwrap() - overlap.norm()).abs() < 1e-15);
    }
}
