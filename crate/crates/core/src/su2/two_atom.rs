use nalgebra::{Matrix2, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::direction::BlochDirection;
use super::qubit::{coherent_qubit, rotation_qubit, DensityMatrix2, Qubit};
use super::spin::PhaseSpace;
use crate::error::{domain, Error, Result};
use crate::EXACT_TOL;

/// Selects one atom of the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    First,
    Second,
}

impl Atom {
    pub fn other(self) -> Atom {
        match self {
            Atom::First => Atom::Second,
            Atom::Second => Atom::First,
        }
    }
}

impl TryFrom<u8> for Atom {
    type Error = Error;

    /// Atoms are numbered 1 and 2.
    fn try_from(index: u8) -> Result<Atom> {
        match index {
            1 => Ok(Atom::First),
            2 => Ok(Atom::Second),
            _ => Err(domain(format!("atom index {index} is not 1 or 2"))),
        }
    }
}

/// Normalized pure state of two two-level atoms, amplitudes ordered
/// `(|++⟩, |+−⟩, |−+⟩, |−−⟩)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoAtomState {
    amps: Vector4<Complex64>,
}

impl TwoAtomState {
    /// Accepts amplitudes already normalized to within `1e-12`.
    pub fn from_amps(amps: [Complex64; 4]) -> Result<Self> {
        let v = Vector4::from(amps);
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("non-finite amplitude"));
        }
        let n2 = v.norm_squared();
        if (n2 - 1.0).abs() > EXACT_TOL {
            return Err(domain(format!("state norm² = {n2}, expected 1")));
        }
        Ok(Self { amps: v })
    }

    /// Rescales nonzero finite amplitudes to unit norm.
    pub fn normalized(amps: [Complex64; 4]) -> Result<Self> {
        let v = Vector4::from(amps);
        let norm = v.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(domain("cannot normalize a zero or non-finite two-atom vector"));
        }
        Ok(Self { amps: v.unscale(norm) })
    }

    /// `|a⟩₁ ⊗ |b⟩₂` for normalized single-atom states.
    pub fn product(a: &Qubit, b: &Qubit) -> Self {
        Self { amps: Vector4::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]) }
    }

    /// `|n⟩₁|m⟩₂`.
    pub fn coherent_product(n: BlochDirection, m: BlochDirection) -> Self {
        Self::product(&coherent_qubit(n), &coherent_qubit(m))
    }

    /// Builds the state whose amplitude matrix is `m` (row: atom 1, column: atom 2).
    pub(crate) fn from_matrix(m: Matrix2<Complex64>) -> Self {
        Self { amps: Vector4::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]) }
    }

    pub fn amps(&self) -> [Complex64; 4] {
        self.amps.into()
    }

    pub fn amp_vector(&self) -> &Vector4<Complex64> {
        &self.amps
    }

    /// Amplitudes as a 2×2 matrix `ψ_{ik}` with `i` indexing atom 1.
    pub fn amplitude_matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.amps[0], self.amps[1], self.amps[2], self.amps[3])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &TwoAtomState) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    /// `‖self − e^{iα} other‖` minimized over the global phase `α`.
    pub fn distance_up_to_phase(&self, other: &TwoAtomState) -> f64 {
        let ov = other.inner(self);
        let phase = if ov.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { ov / ov.norm() };
        (self.amps - other.amps * phase).norm()
    }

    /// `(U₁ ⊗ U₂)|ψ⟩`.
    pub fn apply_local(&self, u1: &Matrix2<Complex64>, u2: &Matrix2<Complex64>) -> TwoAtomState {
        Self::from_matrix(u1 * self.amplitude_matrix() * u2.transpose())
    }

    /// Local rotation `g₁(n) ⊗ g₂(m)`.
    pub fn rotate(&self, n: BlochDirection, m: BlochDirection) -> TwoAtomState {
        self.apply_local(&rotation_qubit(n), &rotation_qubit(m))
    }
}

/// `|ψ(n₁, n₂)⟩ = g₁†(n₁) g₂†(n₂) |ψ⟩`: the state after each atom is rotated
/// so that a readout of `|+⟩` projects onto `|n_r⟩`.
pub fn displace_two_atoms(psi: &TwoAtomState, n1: BlochDirection, n2: BlochDirection) -> TwoAtomState {
    psi.apply_local(&rotation_qubit(n1).adjoint(), &rotation_qubit(n2).adjoint())
}

/// Joint Q function `|⟨n₁|⟨n₂|ψ⟩|²`.
#[inline]
pub fn joint_q(psi: &TwoAtomState, n1: BlochDirection, n2: BlochDirection) -> f64 {
    let c1 = coherent_qubit(n1);
    let c2 = coherent_qubit(n2);
    let a = psi.amps;
    let row0 = a[0] * c2[0].conj() + a[1] * c2[1].conj();
    let row1 = a[2] * c2[0].conj() + a[3] * c2[1].conj();
    (c1[0].conj() * row0 + c1[1].conj() * row1).norm_sqr()
}

/// Reduced density matrix of one atom (partial trace over the other).
pub fn reduced_density(psi: &TwoAtomState, atom: Atom) -> DensityMatrix2 {
    let m = psi.amplitude_matrix();
    let rho = match atom {
        Atom::First => m * m.adjoint(),
        // (ρ₂)_{kl} = Σ_i ψ_{ik} ψ̄_{il}
        Atom::Second => m.transpose() * m.conjugate(),
    };
    DensityMatrix2::from_raw(rho)
}

/// Single-atom Q function `Q_r(n) = ⟨n|ρ_r|n⟩`.
pub fn marginal_q(psi: &TwoAtomState, atom: Atom, n: BlochDirection) -> f64 {
    reduced_density(psi, atom).q_function(n)
}
