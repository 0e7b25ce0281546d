use num_complex::Complex64;

use super::qubit::{complement, hermitian_eigen, Qubit};
use super::two_atom::TwoAtomState;
use std::f64::consts::TAU;

/// Below this magnitude the smaller Schmidt coefficient carries no usable phase.
const PHASE_FLOOR: f64 = 1e-15;

/// Threshold on the Schmidt angle for calling a state entangled.
pub const ENTANGLEMENT_TOL: f64 = 1e-9;

/// `ψ = cosϑ |ξ₊⟩|ζ₊⟩ + sinϑ e^{iφ} |ξ₋⟩|ζ₋⟩` with `ϑ ∈ [0, π/4]`.
///
/// The global phase of `ψ` is dropped: reconstruction matches `ψ` only up to
/// a phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchmidtForm {
    pub vartheta: f64,
    pub varphi: f64,
    /// `[ξ₊, ξ₋]` for atom 1.
    pub basis1: [Qubit; 2],
    /// `[ζ₊, ζ₋]` for atom 2.
    pub basis2: [Qubit; 2],
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> TwoAtomState {
        let (s, c) = self.vartheta.sin_cos();
        let first = TwoAtomState::product(&self.basis1[0], &self.basis2[0]);
        let second = TwoAtomState::product(&self.basis1[1], &self.basis2[1]);
        let v = first.amp_vector() * Complex64::from(c) + second.amp_vector() * Complex64::from_polar(s, self.varphi);
        TwoAtomState::normalized(v.into()).expect("Schmidt vectors are orthonormal")
    }
}

/// Schmidt decomposition with coefficients sorted descending and the relative
/// phase carried by the smaller term.
///
/// `ξ₊` is the leading eigenvector of the first atom's reduced density matrix;
/// `ζ₊ ∝ ⟨ξ₊|ψ⟩`. The minor vectors are the orthogonal complements, so the
/// bases are orthonormal even for product states.
pub fn schmidt_decompose(psi: &TwoAtomState) -> SchmidtForm {
    let m = psi.amplitude_matrix();
    let (_, [xi_p, xi_m]) = hermitian_eigen(&(m * m.adjoint()));
    // ⟨ξ|₁ψ as a vector of atom 2: (Mᵀ ξ̄)
    let partial = |xi: &Qubit| m.transpose() * xi.conjugate();
    let zeta_raw = partial(&xi_p);
    let lead = zeta_raw.norm();
    let zeta_p = if lead > 0.0 { zeta_raw.unscale(lead) } else { super::qubit::upper() };
    let zeta_m = complement(&zeta_p);
    let minor = zeta_m.dotc(&partial(&xi_m));
    let vartheta = minor.norm().atan2(lead);
    let varphi = if minor.norm() > PHASE_FLOOR { minor.arg().rem_euclid(TAU) } else { 0.0 };
    SchmidtForm { vartheta, varphi, basis1: [xi_p, xi_m], basis2: [zeta_p, zeta_m] }
}

/// Canonical Schmidt angle `ϑ ∈ [0, π/4]`.
pub fn entanglement_angle(psi: &TwoAtomState) -> f64 {
    schmidt_decompose(psi).vartheta
}

pub fn is_entangled(psi: &TwoAtomState) -> bool {
    entanglement_angle(psi) > ENTANGLEMENT_TOL
}
