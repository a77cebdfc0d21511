//! Monte Carlo simulation of the joint discrimination protocol.
//!
//! Each trial prepares `ρ_AB` or `σ_AB` with probability ½, measures the
//! Helstrom projectors `{m0, m1}` on the joint system and records a
//! misidentification when the outcome names the other state.
//!
//! Random numbers come from a ChaCha8 stream addressed by trial index, so the
//! report is bit-identical whether trials run serially or in parallel chunks.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::measures::{self, ProbabilityValue, BORN_SLACK};
use crate::qstate::DensityMatrix;
use crate::scenarios::JointStatePair;

/// Eigenvalues above this go to the guess-ρ projector; zero modes go to `m1`.
pub const TIE_EPSILON: f64 = 1e-10;
/// 32-bit words of the ChaCha stream consumed per trial.
const WORDS_PER_TRIAL: u128 = 4;
const CHUNK: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementPair {
    /// Outcome "prepared ρ".
    pub m0: ComplexMatrix,
    /// Outcome "prepared σ".
    pub m1: ComplexMatrix,
}

impl MeasurementPair {
    /// Largest deviation from completeness, idempotence and orthogonality.
    pub fn projector_defect(&self) -> f64 {
        let dim = self.m0.dim();
        let id = ComplexMatrix::identity(dim).expect("dimension");
        let zero = ComplexMatrix::zeros(dim).expect("dimension");
        [
            (&self.m0 + &self.m1).max_abs_diff(&id),
            (&self.m0 * &self.m0).max_abs_diff(&self.m0),
            (&self.m1 * &self.m1).max_abs_diff(&self.m1),
            (&self.m0 * &self.m1).max_abs_diff(&zero),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Projectors onto the positive and non-positive eigenspaces of `ρ_AB − σ_AB`.
pub fn helstrom_projectors(pair: &JointStatePair) -> Result<MeasurementPair> {
    projectors_for(&pair.rho_ab, &pair.sigma_ab)
}

pub fn projectors_for(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<MeasurementPair> {
    let diff = rho.matrix().checked_sub(sigma.matrix())?;
    let es = linalg::hermitian_eigensystem(&diff)?;
    let m0 = es.spectral_projector(|l| l > TIE_EPSILON);
    let m1 = &ComplexMatrix::identity(diff.dim())? - &m0;
    Ok(MeasurementPair { m0, m1 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationReport {
    pub trials: u64,
    pub errors: u64,
    pub empirical_error: f64,
    /// Binomial standard error `√(p̂(1−p̂)/trials)`.
    pub standard_error: f64,
    /// Helstrom error of the joint pair.
    pub analytic_error: ProbabilityValue,
    /// `(p̂ − analytic) / standard_error`; zero when both agree with no spread.
    pub z_score: f64,
    pub seed: u64,
}

/// Born probability of outcome 0 for a prepared state.
fn outcome_zero_probability(state: &DensityMatrix, m: &MeasurementPair) -> Result<f64> {
    let p0 = (state.matrix() * &m.m0).trace().re;
    let p1 = (state.matrix() * &m.m1).trace().re;
    for p in [p0, p1] {
        if !(-BORN_SLACK..=1.0 + BORN_SLACK).contains(&p) {
            return Err(Error::NumericalFailure(format!(
                "Born probability {p} outside [0, 1]"
            )));
        }
    }
    let (p0, p1) = (p0.max(0.0), p1.max(0.0));
    let total = p0 + p1;
    if (total - 1.0).abs() > BORN_SLACK {
        return Err(Error::NumericalFailure(format!(
            "Born probabilities sum to {total}"
        )));
    }
    Ok(p0 / total)
}

#[inline]
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Counts misidentifications over trials `[start, end)`.
fn count_errors(seed: u64, start: u64, end: u64, p0_rho: f64, p0_sigma: f64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(start as u128 * WORDS_PER_TRIAL);
    let mut errors = 0;
    for _ in start..end {
        let prepared_rho = unit(&mut rng) < 0.5;
        let u = unit(&mut rng);
        let guessed_rho = if prepared_rho { u < p0_rho } else { u < p0_sigma };
        if guessed_rho != prepared_rho {
            errors += 1;
        }
    }
    errors
}

/// Runs `trials` rounds of the protocol with equal priors.
pub fn simulate(pair: &JointStatePair, trials: u64, seed: u64) -> Result<SimulationReport> {
    if trials == 0 {
        return invalid("trials must be at least 1");
    }
    let m = helstrom_projectors(pair)?;
    let p0_rho = outcome_zero_probability(&pair.rho_ab, &m)?;
    let p0_sigma = outcome_zero_probability(&pair.sigma_ab, &m)?;

    let chunks = trials.div_ceil(CHUNK);
    let errors: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            count_errors(seed, start, (start + CHUNK).min(trials), p0_rho, p0_sigma)
        })
        .sum();

    let analytic_error = measures::helstrom_error(&pair.rho_ab, &pair.sigma_ab)?;
    let p_hat = errors as f64 / trials as f64;
    let standard_error = (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
    let gap = p_hat - analytic_error.value();
    let z_score = if standard_error > 0.0 {
        gap / standard_error
    } else if gap.abs() <= 1e-12 {
        0.0
    } else {
        gap.signum() * f64::INFINITY
    };
    Ok(SimulationReport {
        trials,
        errors,
        empirical_error: p_hat,
        standard_error,
        analytic_error,
        z_score,
        seed,
    })
}
