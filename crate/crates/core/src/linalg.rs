//! Dense complex linear algebra for 2×2 and 4×4 operators.
//!
//! Matrices are stored inline (no heap allocation) in row-major order. Two-qubit
//! operators use A-major tensor ordering: basis index `2 * a + b` for subsystem
//! A index `a` and subsystem B index `b`, so `|ψ⟩_A ⊗ |0⟩_B` places the A
//! amplitudes on rows 0 and 2.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{invalid, Error, Result};

/// Tolerance for treating an input as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
pub const JACOBI_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are treated as one degenerate cluster.
pub const DEGENERACY_TOL: f64 = 1e-10;

const MAX_DIM: usize = 4;

#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [C64; MAX_DIM * MAX_DIM],
}

/// Which tensor factor a partial trace keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        invalid(format!("matrix dimension must be 2 or 4, got {dim}"))
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: [C64::new(0.0, 0.0); MAX_DIM * MAX_DIM],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries; the length fixes the dimension.
    pub fn from_entries(entries: &[C64]) -> Result<Self> {
        let dim = match entries.len() {
            4 => 2,
            16 => 4,
            n => return invalid(format!("expected 4 or 16 entries, got {n}")),
        };
        let mut m = Self::zeros(dim)?;
        m.data[..entries.len()].copy_from_slice(entries);
        Ok(m)
    }

    pub fn from_real_diag(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        Ok(m)
    }

    /// `|v⟩⟨w|`.
    pub fn outer(v: &[C64], w: &[C64]) -> Result<Self> {
        if v.len() != w.len() {
            return invalid("outer product of vectors with different lengths");
        }
        let mut m = Self::zeros(v.len())?;
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                m[(i, j)] = vi * wj.conj();
            }
        }
        Ok(m)
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &[C64]) -> Result<Self> {
        Self::outer(v, v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entries(&self) -> &[C64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        out.data.iter_mut().for_each(|z| *z *= s);
        out
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Largest entrywise modulus of `self − other`; infinite on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= HERMITIAN_TOL
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return invalid(format!(
                "vector length {} does not match matrix dimension {}",
                v.len(),
                self.dim
            ));
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// `⟨v|M|v⟩`.
    pub fn expectation(&self, v: &[C64]) -> Result<C64> {
        let mv = self.apply(v)?;
        Ok(v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return invalid("matrix product dimension mismatch");
        }
        Ok(self * rhs)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return invalid(format!(
                "cannot subtract {}×{} and {}×{} matrices",
                self.dim, self.dim, rhs.dim, rhs.dim
            ));
        }
        Ok(self - rhs)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return invalid("matrix sum dimension mismatch");
        }
        Ok(self + rhs)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i * self.dim + j]
    }
}

// The operator impls assume equal dimensions; use the checked_* methods when
// that is not already guaranteed by construction.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = *self;
        out.data.iter_mut().zip(&rhs.data).for_each(|(a, b)| *a += b);
        out
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = *self;
        out.data.iter_mut().zip(&rhs.data).for_each(|(a, b)| *a -= b);
        out
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix {
            dim: n,
            data: [C64::new(0.0, 0.0); MAX_DIM * MAX_DIM],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b` of two 2×2 matrices, A index major.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim != 2 || b.dim != 2 {
        return invalid(format!(
            "tensor_product expects two 2×2 operands, got {}×{} and {}×{}",
            a.dim, a.dim, b.dim, b.dim
        ));
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for ia in 0..2 {
        for ja in 0..2 {
            let s = a[(ia, ja)];
            for ib in 0..2 {
                for jb in 0..2 {
                    out[(2 * ia + ib, 2 * ja + jb)] = s * b[(ib, jb)];
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of two 2-component kets, A index major.
pub fn tensor_ket(a: &[C64; 2], b: &[C64; 2]) -> [C64; 4] {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// Reduced operator on `keep` of a 4×4 two-qubit operator.
pub fn partial_trace(rho_ab: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if rho_ab.dim != 4 {
        return invalid(format!(
            "partial_trace expects a 4×4 operator, got {}×{}",
            rho_ab.dim, rho_ab.dim
        ));
    }
    let mut out = ComplexMatrix::zeros(2)?;
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match keep {
                // sum over the B index
                Subsystem::A => (0..2).map(|k| rho_ab[(2 * i + k, 2 * j + k)]).sum(),
                // sum over the A index
                Subsystem::B => (0..2).map(|k| rho_ab[(2 * k + i, 2 * k + j)]).sum(),
            };
        }
    }
    Ok(out)
}

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector for `values[k]`.
    pub vectors: Vec<Vec<C64>>,
}

impl EigenSystem {
    /// `Σ λₖ |vₖ⟩⟨vₖ|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n).expect("eigensystem dimension");
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * *lambda;
                }
            }
        }
        out
    }

    /// Projector onto the span of the eigenvectors selected by `keep`.
    pub fn spectral_projector(&self, mut keep: impl FnMut(f64) -> bool) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n).expect("eigensystem dimension");
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            if keep(*lambda) {
                for i in 0..n {
                    for j in 0..n {
                        out[(i, j)] += v[i] * v[j].conj();
                    }
                }
            }
        }
        out
    }
}

struct Jacobi {
    a: ComplexMatrix,
    v: Option<ComplexMatrix>,
}

impl Jacobi {
    fn off_norm(&self) -> f64 {
        let n = self.a.dim;
        let mut s = 0.0;
        for (k, z) in self.a.data[..n * n].iter().enumerate() {
            if k / n != k % n {
                s += z.norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Zeroes `a[p][q]` with the unitary `U = diag(1, e^{-iα}) · R(c, s)` on the
    /// (p, q) plane, where `a[p][q] = r e^{iα}`.
    fn rotate(&mut self, p: usize, q: usize) {
        let n = self.a.dim;
        let a = &mut self.a.data[..n * n];
        let apq = a[p * n + q];
        let r2 = apq.norm_sqr();
        if r2 == 0.0 {
            return;
        }
        let r = r2.sqrt();
        let phase = C64::new(apq.re / r, -apq.im / r);
        let app = a[p * n + p].re;
        let aqq = a[q * n + q].re;
        let tau = (aqq - app) / (2.0 * r);
        let t = if tau >= 0.0 {
            1.0 / (tau + (1.0 + tau * tau).sqrt())
        } else {
            -1.0 / (-tau + (1.0 + tau * tau).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        let s = t * c;
        // U = [[c, s], [−s·phase, c·phase]] on the (p, q) plane
        let u_qp = phase * (-s);
        let u_qq = phase * c;

        // A ← A U
        for row in a.chunks_exact_mut(n) {
            let (akp, akq) = (row[p], row[q]);
            row[p] = akp * c + akq * u_qp;
            row[q] = akp * s + akq * u_qq;
        }
        // A ← U† A
        let (cqp, cqq) = (u_qp.conj(), u_qq.conj());
        for k in 0..n {
            let (apk, aqk) = (a[p * n + k], a[q * n + k]);
            a[p * n + k] = apk * c + cqp * aqk;
            a[q * n + k] = apk * s + cqq * aqk;
        }
        a[p * n + q] = C64::new(0.0, 0.0);
        a[q * n + p] = C64::new(0.0, 0.0);
        a[p * n + p] = C64::new(app - t * r, 0.0);
        a[q * n + q] = C64::new(aqq + t * r, 0.0);

        if let Some(v) = self.v.as_mut() {
            for row in v.data[..n * n].chunks_exact_mut(n) {
                let (vkp, vkq) = (row[p], row[q]);
                row[p] = vkp * c + vkq * u_qp;
                row[q] = vkp * s + vkq * u_qq;
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        let n = self.a.dim;
        let threshold = JACOBI_TOL * self.a.frobenius_norm().max(1.0);
        for _ in 0..JACOBI_MAX_SWEEPS {
            if self.off_norm() <= threshold {
                return Ok(());
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    self.rotate(p, q);
                }
            }
        }
        if self.off_norm() <= threshold {
            Ok(())
        } else {
            Err(Error::NumericalFailure(format!(
                "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )))
        }
    }
}

fn require_hermitian(h: &ComplexMatrix) -> Result<()> {
    let defect = h.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return invalid(format!("matrix is not Hermitian (defect {defect:.3e})"));
    }
    Ok(())
}

/// Ascending eigenvalues of a Hermitian matrix, without eigenvectors.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    require_hermitian(h)?;
    if h.dim == 2 {
        let mean = 0.5 * (h[(0, 0)].re + h[(1, 1)].re);
        let half_gap = 0.5 * (h[(0, 0)].re - h[(1, 1)].re);
        let r = (half_gap * half_gap + h[(0, 1)].norm_sqr()).sqrt();
        return Ok(vec![mean - r, mean + r]);
    }
    let mut j = Jacobi { a: *h, v: None };
    j.run()?;
    let mut values: Vec<f64> = (0..h.dim).map(|i| j.a[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Full eigendecomposition by cyclic complex Jacobi rotations.
///
/// Eigenvectors inside a degenerate cluster are re-orthonormalized by
/// Gram–Schmidt in index order, so spectral projectors are reproducible.
pub fn hermitian_eigensystem(h: &ComplexMatrix) -> Result<EigenSystem> {
    require_hermitian(h)?;
    let n = h.dim;
    let mut j = Jacobi {
        a: *h,
        v: Some(ComplexMatrix::identity(n)?),
    };
    j.run()?;
    let v = j.v.expect("eigenvectors requested");

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps index order among equal eigenvalues
    order.sort_by(|&x, &y| j.a[(x, x)].re.total_cmp(&j.a[(y, y)].re));
    let values: Vec<f64> = order.iter().map(|&k| j.a[(k, k)].re).collect();
    let mut vectors: Vec<Vec<C64>> = order
        .iter()
        .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
        .collect();

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (values[end] - values[end - 1]).abs() <= DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            gram_schmidt(&mut vectors[start..end]);
        }
        start = end;
    }
    Ok(EigenSystem { values, vectors })
}

fn gram_schmidt(vs: &mut [Vec<C64>]) {
    for k in 0..vs.len() {
        let (done, rest) = vs.split_at_mut(k);
        let v = &mut rest[0];
        for u in done.iter() {
            let overlap: C64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= overlap * y);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// `Σ |λᵢ|` for a Hermitian matrix.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(a)?.iter().map(|x| x.abs()).sum())
}

/// Pauli matrices and small fixed operators.
pub mod pauli {
    use super::ComplexMatrix;
    use num_complex::Complex64 as C64;

    const O: C64 = C64::new(0.0, 0.0);
    const ONE: C64 = C64::new(1.0, 0.0);
    const I: C64 = C64::new(0.0, 1.0);

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::from_entries(&[ONE, O, O, ONE]).unwrap()
    }
    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_entries(&[O, ONE, ONE, O]).unwrap()
    }
    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_entries(&[O, -I, I, O]).unwrap()
    }
    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_entries(&[ONE, O, O, -ONE]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn identity_tensor_identity() {
        let i2 = pauli::identity();
        let i4 = tensor_product(&i2, &i2).unwrap();
        assert_eq!(i4, ComplexMatrix::identity(4).unwrap());
    }

    #[test]
    fn tensor_ordering_is_a_major() {
        let p0 = ComplexMatrix::from_real_diag(&[1.0, 0.0]).unwrap();
        let p1 = ComplexMatrix::from_real_diag(&[0.0, 1.0]).unwrap();
        let t = tensor_product(&p0, &p1).unwrap();
        assert_eq!(t, ComplexMatrix::from_real_diag(&[0.0, 1.0, 0.0, 0.0]).unwrap());
        let ket = tensor_ket(&[c(0.6), c(0.8)], &[c(1.0), c(0.0)]);
        assert_eq!(ket, [c(0.6), c(0.0), c(0.8), c(0.0)]);
    }

    #[test]
    fn tensor_rejects_4x4() {
        let i4 = ComplexMatrix::identity(4).unwrap();
        let i2 = pauli::identity();
        assert!(matches!(
            tensor_product(&i4, &i2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn eigen_diag_and_pauli() {
        let d = ComplexMatrix::from_real_diag(&[3.0, 1.0]).unwrap();
        let es = hermitian_eigensystem(&d).unwrap();
        assert_eq!(es.values, vec![1.0, 3.0]);
        let sx = hermitian_eigenvalues(&pauli::x()).unwrap();
        assert!((sx[0] + 1.0).abs() < 1e-14 && (sx[1] - 1.0).abs() < 1e-14);
        let sy = hermitian_eigenvalues(&pauli::y()).unwrap();
        assert!((sy[0] + 1.0).abs() < 1e-14 && (sy[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let m = ComplexMatrix::from_entries(&[c(1.0), c(2.0), c(0.0), c(1.0)]).unwrap();
        assert!(matches!(
            hermitian_eigensystem(&m),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn eigen_degenerate_cluster_is_orthonormal() {
        let es = hermitian_eigensystem(&ComplexMatrix::identity(4).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let g: C64 = es.vectors[i]
                    .iter()
                    .zip(&es.vectors[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - c(expect)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn trace_norm_examples() {
        let p0 = ComplexMatrix::from_real_diag(&[1.0, 0.0]).unwrap();
        let p1 = ComplexMatrix::from_real_diag(&[0.0, 1.0]).unwrap();
        assert_eq!(trace_norm(&(&p0 - &p0)).unwrap(), 0.0);
        assert!((trace_norm(&(&p0 - &p1)).unwrap() - 2.0).abs() < 1e-14);
        let plus = ComplexMatrix::projector(&[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        // |0⟩⟨0| − |+⟩⟨+| = [[1/2, −1/2], [−1/2, −1/2]], eigenvalues ±1/√2
        let diff = &p0 - &plus;
        let ev = hermitian_eigenvalues(&diff).unwrap();
        assert!((ev[1] - FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((trace_norm(&diff).unwrap() - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn partial_traces() {
        let bell = [c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)];
        let rho = ComplexMatrix::projector(&bell).unwrap();
        let ra = partial_trace(&rho, Subsystem::A).unwrap();
        assert!(ra.max_abs_diff(&pauli::identity().scale_real(0.5)) < 1e-15);
        let rb = partial_trace(&rho, Subsystem::B).unwrap();
        assert!(rb.max_abs_diff(&pauli::identity().scale_real(0.5)) < 1e-15);

        let a = ComplexMatrix::projector(&[c(0.6), c(0.8)]).unwrap();
        let b = ComplexMatrix::from_entries(&[c(0.3), C64::new(0.1, -0.2), C64::new(0.1, 0.2), c(0.7)])
            .unwrap();
        let ab = tensor_product(&a, &b).unwrap();
        // keeping B traces out A
        assert!(partial_trace(&ab, Subsystem::B).unwrap().max_abs_diff(&b) < 1e-15);
        assert!(partial_trace(&ab, Subsystem::A).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(partial_trace(&a, Subsystem::A).is_err());
    }

    #[test]
    fn zeros_rejects_dim_3() {
        assert!(ComplexMatrix::zeros(3).is_err());
        assert!(ComplexMatrix::from_entries(&[c(1.0); 9]).is_err());
    }
}
