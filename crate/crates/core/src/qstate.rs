//! Qubit states: pure kets from Bloch angles, their orthogonal complements, the
//! primed basis, Bloch-vector mixed states and validated density matrices.

use num_complex::Complex64 as C64;

use crate::error::{invalid, Result};
use crate::linalg::{self, pauli, ComplexMatrix};

pub const NORM_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const BLOCH_TOL: f64 = 1e-12;

/// A normalized single-qubit ket `a0|0⟩ + a1|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureQubit {
    amps: [C64; 2],
}

impl PureQubit {
    pub fn new(a0: C64, a1: C64) -> Result<Self> {
        let n = a0.norm_sqr() + a1.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return invalid(format!("qubit amplitudes not normalized (norm² = {n})"));
        }
        Ok(Self { amps: [a0, a1] })
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64; 2] {
        &self.amps
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureQubit) -> C64 {
        self.amps[0].conj() * other.amps[0] + self.amps[1].conj() * other.amps[1]
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.amps).expect("2-component ket")
    }

    /// Copy with the global phase fixed so the first nonzero amplitude is real
    /// and nonnegative. Only for comparisons; constructors keep literal signs.
    pub fn canonical(&self) -> PureQubit {
        let lead = if self.amps[0].norm() > NORM_TOL {
            self.amps[0]
        } else {
            self.amps[1]
        };
        let phase = lead.conj() / lead.norm();
        PureQubit {
            amps: [self.amps[0] * phase, self.amps[1] * phase],
        }
    }

    /// Equality up to global phase.
    pub fn same_ray(&self, other: &PureQubit, tol: f64) -> bool {
        (1.0 - self.inner(other).norm()).abs() <= tol
    }
}

/// `cos θ |0⟩ + sin θ |1⟩`.
pub fn pure_from_angle(theta: f64) -> PureQubit {
    PureQubit {
        amps: [C64::new(theta.cos(), 0.0), C64::new(theta.sin(), 0.0)],
    }
}

/// `sin θ |0⟩ − cos θ |1⟩`, orthogonal to [`pure_from_angle`]`(θ)`.
pub fn orthogonal_complement(theta: f64) -> PureQubit {
    PureQubit {
        amps: [C64::new(theta.sin(), 0.0), C64::new(-theta.cos(), 0.0)],
    }
}

/// The primed basis `|0′⟩ = cos x|0⟩ + e^{iy} sin x|1⟩`,
/// `|1′⟩ = sin x|0⟩ − e^{iy} cos x|1⟩`.
pub fn primed_basis(x: f64, y: f64) -> (PureQubit, PureQubit) {
    let e = C64::from_polar(1.0, y);
    let zero = PureQubit {
        amps: [C64::new(x.cos(), 0.0), e * x.sin()],
    };
    let one = PureQubit {
        amps: [C64::new(x.sin(), 0.0), -e * x.cos()],
    };
    (zero, one)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.norm();
        if !n.is_finite() || n > 1.0 + BLOCH_TOL {
            return invalid(format!("Bloch vector norm {n} exceeds 1"));
        }
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// A validated density operator on one or two qubits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_hermitian() {
            return invalid(format!(
                "state is not Hermitian (defect {:.3e})",
                m.hermiticity_defect()
            ));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return invalid(format!("state trace is {tr}, expected 1"));
        }
        let min = linalg::hermitian_eigenvalues(&m)?[0];
        if min < -PSD_TOL {
            return invalid(format!("state has negative eigenvalue {min:.3e}"));
        }
        Ok(Self(m))
    }

    /// Skips the eigenvalue check; the caller guarantees a valid state.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        debug_assert!(m.is_hermitian());
        Self(m)
    }

    pub fn from_pure(psi: &PureQubit) -> Self {
        Self(psi.projector())
    }

    pub fn from_ket(ket: &[C64]) -> Result<Self> {
        let n: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if (n - 1.0).abs() > NORM_TOL {
            return invalid(format!("ket not normalized (norm² = {n})"));
        }
        Ok(Self(ComplexMatrix::projector(ket)?))
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }
}

/// `(I + r·σ)/2`.
pub fn bloch_to_density(r: &BlochVector) -> Result<DensityMatrix> {
    r.validate()?;
    let m = &(&(&pauli::identity() + &pauli::x().scale_real(r.x))
        + &pauli::y().scale_real(r.y))
        + &pauli::z().scale_real(r.z);
    Ok(DensityMatrix(m.scale_real(0.5)))
}

/// `r_i = Tr(ρ σ_i)`.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return invalid("density_to_bloch expects a single-qubit state");
    }
    let m = rho.matrix();
    let comp = |p: ComplexMatrix| (m * &p).trace().re;
    let v = BlochVector {
        x: comp(pauli::x()),
        y: comp(pauli::y()),
        z: comp(pauli::z()),
    };
    v.validate()?;
    Ok(v)
}

/// Wraps an angle into `[0, period)`. Returns the wrapped value and whether it moved.
pub fn wrap_angle(value: f64, period: f64) -> (f64, bool) {
    let w = value.rem_euclid(period);
    (w, (w - value).abs() > 0.0)
}
