//! Binary qubit state discrimination with constrained joint extensions.
//!
//! Two target qubit states `ρ_B`, `σ_B` are extended to two-qubit states
//! `ρ_AB`, `σ_AB`. Measuring the extensions with the optimal joint projective
//! measurement and discarding the auxiliary qubit A induces an effective,
//! generally non-positive, measurement on B. Its error
//! `½ − ¼‖ρ_AB − σ_AB‖₁`, minimized over the auxiliary parameters under a
//! bound `d` on the auxiliary distinguishability and a bound `E` on the joint
//! concurrence, is compared with the Helstrom error `½ − ¼‖ρ_B − σ_B‖₁`.
//!
//! Modules, bottom up:
//!
//! - [`linalg`]: 2×2 / 4×4 complex matrices, Jacobi eigensolver, trace norm,
//!   tensor product and partial trace.
//! - [`qstate`]: pure qubits, Bloch vectors, validated density matrices.
//! - [`measures`]: trace distance, Helstrom error/success, concurrence.
//! - [`scenarios`]: the joint-state families and their closed forms.
//! - [`optimizer`]: grid + simplex constrained minimization and sweeps.
//! - [`mcsim`]: Monte Carlo simulation of the joint measurement.

pub mod error;
pub mod linalg;
pub mod mcsim;
pub mod measures;
pub mod optimizer;
pub mod qstate;
pub mod scenarios;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenSystem, Subsystem};
pub use measures::ProbabilityValue;
pub use optimizer::{
    ConstraintMode, ConstraintSet, OptimizationResult, OptimizerConfig, SweepAxis, SweepTable,
};
pub use qstate::{BlochVector, DensityMatrix, PureQubit};
pub use scenarios::{JointStatePair, ScenarioId, ScenarioParams};
