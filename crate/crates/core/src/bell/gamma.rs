use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::su2::{coherent_qubit, direction_of, BlochDirection, Qubit, TwoAtomState};

/// Lower end of the range allowed by local realism.
pub const LHV_LOWER: f64 = -1.0;
/// Upper end of the range allowed by local realism.
pub const LHV_UPPER: f64 = 0.0;

/// Analyzer directions `(a, a′)` for atom 1 and `(b, b′)` for atom 2.
///
/// The fixed-reference form of the inequality uses `a = b = ẑ`, see
/// [`CHSettings::pinned`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CHSettings {
    pub a: BlochDirection,
    pub a_prime: BlochDirection,
    pub b: BlochDirection,
    pub b_prime: BlochDirection,
}

impl CHSettings {
    pub fn new(a: BlochDirection, a_prime: BlochDirection, b: BlochDirection, b_prime: BlochDirection) -> Self {
        Self { a, a_prime, b, b_prime }
    }

    /// `a = b = ẑ` (no displacement), free `a′ = n`, `b′ = n′`.
    pub fn pinned(n: BlochDirection, n_prime: BlochDirection) -> Self {
        Self::new(BlochDirection::ZENITH, n, BlochDirection::ZENITH, n_prime)
    }

    /// Every analyzer set to the same direction.
    pub fn uniform(d: BlochDirection) -> Self {
        Self::new(d, d, d, d)
    }

    /// Settings seen by the state `(g₁ ⊗ g₂)|ψ⟩`: each direction `d` becomes
    /// the `d′` with `|d′⟩ ∝ g|d⟩`, so that Γ is unchanged.
    pub fn rotated(&self, g1: &Matrix2<Complex64>, g2: &Matrix2<Complex64>) -> Self {
        let map = |g: &Matrix2<Complex64>, d: BlochDirection| {
            direction_of(&(g * coherent_qubit(d))).expect("unitary image of a unit vector")
        };
        Self::new(map(g1, self.a), map(g1, self.a_prime), map(g2, self.b), map(g2, self.b_prime))
    }
}

/// The six probabilities entering Γ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaTerms {
    pub q12_a_b: f64,
    pub q12_ap_b: f64,
    pub q12_a_bp: f64,
    pub q12_ap_bp: f64,
    pub q1_a: f64,
    pub q2_b: f64,
}

impl GammaTerms {
    /// `Q₁₂(a,b) + Q₁₂(a′,b) + Q₁₂(a,b′) − Q₁₂(a′,b′) − Q₁(a) − Q₂(b)`.
    pub fn combine(&self) -> f64 {
        self.q12_a_b + self.q12_ap_b + self.q12_a_bp - self.q12_ap_bp - self.q1_a - self.q2_b
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.q12_a_b, self.q12_ap_b, self.q12_a_bp, self.q12_ap_bp, self.q1_a, self.q2_b]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaResult {
    pub gamma: f64,
    pub settings: CHSettings,
    pub terms: GammaTerms,
}

impl GammaResult {
    /// Distance outside `[−1, 0]`; zero or negative when the local bound holds.
    pub fn violation(&self) -> f64 {
        violation(self.gamma)
    }
}

/// Signed distance of `gamma` outside the local-realism range.
pub fn violation(gamma: f64) -> f64 {
    (gamma - LHV_UPPER).max(LHV_LOWER - gamma)
}

#[inline]
fn amplitude(psi: &[Complex64; 4], c1: &Qubit, c2: &Qubit) -> Complex64 {
    let row0 = psi[0] * c2[0].conj() + psi[1] * c2[1].conj();
    let row1 = psi[2] * c2[0].conj() + psi[3] * c2[1].conj();
    c1[0].conj() * row0 + c1[1].conj() * row1
}

#[inline]
fn marginal(psi: &[Complex64; 4], c: &Qubit, atom_one: bool) -> f64 {
    // Σ over the other atom's basis of |⟨n|⟨k|ψ⟩|²
    let (x0, x1, y0, y1) = if atom_one { (psi[0], psi[2], psi[1], psi[3]) } else { (psi[0], psi[1], psi[2], psi[3]) };
    (c[0].conj() * x0 + c[1].conj() * x1).norm_sqr() + (c[0].conj() * y0 + c[1].conj() * y1).norm_sqr()
}

/// Clauser-Horne combination for `psi` at settings `s`.
pub fn gamma(psi: &TwoAtomState, s: &CHSettings) -> GammaResult {
    let amps = psi.amps();
    let ca = coherent_qubit(s.a);
    let cap = coherent_qubit(s.a_prime);
    let cb = coherent_qubit(s.b);
    let cbp = coherent_qubit(s.b_prime);
    let terms = GammaTerms {
        q12_a_b: amplitude(&amps, &ca, &cb).norm_sqr(),
        q12_ap_b: amplitude(&amps, &cap, &cb).norm_sqr(),
        q12_a_bp: amplitude(&amps, &ca, &cbp).norm_sqr(),
        q12_ap_bp: amplitude(&amps, &cap, &cbp).norm_sqr(),
        q1_a: marginal(&amps, &ca, true),
        q2_b: marginal(&amps, &cb, false),
    };
    GammaResult { gamma: terms.combine(), settings: *s, terms }
}

/// Closed-form Γ for `u(φ)` at `a = b = ẑ`, `a′ = (θ, φ)`, `b′ = (θ, φ′)`.
pub fn analytic_gamma_u(theta: f64, phi: f64, phi_prime: f64, varphi: f64) -> f64 {
    let half = (theta / 2.0).sin();
    half * half - 0.5 * theta.sin().powi(2) * ((phi - phi_prime - varphi) / 2.0).cos().powi(2) - 1.0
}

/// Closed-form Γ for `v(φ)` at `a = b = ẑ`, `a′ = (θ, φ)`, `b′ = (θ, φ′)`.
pub fn analytic_gamma_v(theta: f64, phi: f64, phi_prime: f64, varphi: f64) -> f64 {
    let c = theta.cos();
    0.5 * (c - c * c - theta.sin().powi(2) * ((phi + phi_prime - varphi) / 2.0).cos().powi(2))
}

/// Settings matching the arguments of [`analytic_gamma_u`] / [`analytic_gamma_v`].
pub fn equal_tilt_settings(theta: f64, phi: f64, phi_prime: f64) -> crate::Result<CHSettings> {
    Ok(CHSettings::pinned(BlochDirection::new(theta, phi)?, BlochDirection::new(theta, phi_prime)?))
}
