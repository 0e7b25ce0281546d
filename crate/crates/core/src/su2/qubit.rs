//! Closed forms for a single two-level atom (`j = 1/2`).

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use super::direction::BlochDirection;
use super::spin::PhaseSpace;
use crate::error::{domain, Result};
use crate::EXACT_TOL;

pub type Qubit = Vector2<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn upper() -> Qubit {
    Qubit::new(ONE, ZERO)
}

pub fn lower() -> Qubit {
    Qubit::new(ZERO, ONE)
}

/// `|n⟩ = cos(θ/2) e^{−iφ/2}|+⟩ + sin(θ/2) e^{iφ/2}|−⟩`.
#[inline]
pub fn coherent_qubit(n: BlochDirection) -> Qubit {
    let (s, c) = (n.theta() / 2.0).sin_cos();
    let (sp, cp) = (n.phi() / 2.0).sin_cos();
    Qubit::new(Complex64::new(c * cp, -c * sp), Complex64::new(s * cp, s * sp))
}

/// `g(n)` on a single atom.
pub fn rotation_qubit(n: BlochDirection) -> Matrix2<Complex64> {
    let (s, c) = (n.theta() / 2.0).sin_cos();
    let em = Complex64::from_polar(1.0, -n.phi() / 2.0);
    let ep = em.conj();
    Matrix2::new(em * c, -em * s, ep * s, ep * c)
}

/// Bloch direction of a nonzero single-atom vector, i.e. the `n` with `|n⟩ ∝ q`.
pub fn direction_of(q: &Qubit) -> Result<BlochDirection> {
    let a = q[0].norm();
    let b = q[1].norm();
    if !(a + b).is_finite() || a + b == 0.0 {
        return Err(domain("zero vector has no Bloch direction"));
    }
    let theta = 2.0 * b.atan2(a);
    let phi = if a == 0.0 || b == 0.0 { 0.0 } else { q[1].arg() - q[0].arg() };
    BlochDirection::new(theta, phi)
}

/// The orthogonal complement `(−b̄, ā)` of `(a, b)`.
pub fn complement(q: &Qubit) -> Qubit {
    Qubit::new(-q[1].conj(), q[0].conj())
}

/// A 2×2 density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix2(Matrix2<Complex64>);

impl DensityMatrix2 {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("non-finite density matrix entry"));
        }
        if (m - m.adjoint()).iter().any(|z| z.norm() > EXACT_TOL) {
            return Err(domain("density matrix is not Hermitian"));
        }
        let rho = Self(m);
        if (rho.trace() - 1.0).abs() > EXACT_TOL {
            return Err(domain(format!("density matrix trace {} ≠ 1", rho.trace())));
        }
        if rho.eigenvalues()[1] < -EXACT_TOL {
            return Err(domain("density matrix has a negative eigenvalue"));
        }
        Ok(rho)
    }

    /// `|q⟩⟨q|` for a normalized `q`.
    pub fn pure(q: &Qubit) -> Self {
        Self(q * q.adjoint())
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix2::identity().scale(0.5))
    }

    pub(crate) fn from_raw(m: Matrix2<Complex64>) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0[(0, 0)].re + self.0[(1, 1)].re
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        hermitian_eigen(&self.0).0
    }
}

impl PhaseSpace for DensityMatrix2 {
    fn q_function(&self, n: BlochDirection) -> f64 {
        let c = coherent_qubit(n);
        c.dotc(&(self.0 * c)).re
    }
}

/// Eigen-decomposition of a Hermitian 2×2 matrix: eigenvalues descending and
/// the matching orthonormal eigenvectors.
pub fn hermitian_eigen(m: &Matrix2<Complex64>) -> ([f64; 2], [Qubit; 2]) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let half_gap = (0.5 * (a - d)).hypot(b.norm());
    let hi = mean + half_gap;
    let lo = mean - half_gap;
    let top = if b.norm() <= f64::EPSILON * (a.abs() + d.abs()).max(f64::MIN_POSITIVE) {
        if a >= d {
            upper()
        } else {
            lower()
        }
    } else {
        // two algebraically equivalent eigenvectors; take the better conditioned one
        let v1 = Qubit::new(b, Complex64::new(hi - a, 0.0));
        let v2 = Qubit::new(Complex64::new(hi - d, 0.0), b.conj());
        let v = if v1.norm() >= v2.norm() { v1 } else { v2 };
        v.unscale(v.norm())
    };
    ([hi, lo], [top, complement(&top)])
}
