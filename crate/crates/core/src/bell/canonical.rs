use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::families::eta_state;
use crate::su2::{direction_of, rotation_qubit, schmidt_decompose, BlochDirection, TwoAtomState};

/// `ψ ≅ (g₁(n) ⊗ g₂(m)) |η(ϑ, φ)⟩` up to a global phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub vartheta: f64,
    pub varphi: f64,
    pub n: BlochDirection,
    pub m: BlochDirection,
}

impl CanonicalForm {
    pub fn eta(&self) -> TwoAtomState {
        eta_state(self.vartheta, self.varphi)
    }

    pub fn reconstruct(&self) -> TwoAtomState {
        self.eta().rotate(self.n, self.m)
    }
}

/// Reduces `psi` to the η family by local rotations.
///
/// `n` and `m` point along the leading Schmidt vectors. The rotation `g(n)`
/// maps `|±⟩` onto the Schmidt vectors only up to phases, which are folded
/// into the returned `varphi`.
pub fn canonical_form(psi: &TwoAtomState) -> CanonicalForm {
    let f = schmidt_decompose(psi);
    let n = direction_of(&f.basis1[0]).expect("normalized Schmidt vector");
    let m = direction_of(&f.basis2[0]).expect("normalized Schmidt vector");
    let g1 = rotation_qubit(n);
    let g2 = rotation_qubit(m);
    // g|+⟩ = e^{iα} ξ₊, g|−⟩ = e^{iβ} ξ₋
    let phase = |basis: &[crate::su2::Qubit; 2], g: &nalgebra::Matrix2<Complex64>, col: usize| -> f64 {
        basis[col].dotc(&g.column(col).into_owned()).arg()
    };
    let alpha = phase(&f.basis1, &g1, 0) + phase(&f.basis2, &g2, 0);
    let beta = phase(&f.basis1, &g1, 1) + phase(&f.basis2, &g2, 1);
    let varphi = if f.vartheta == 0.0 { 0.0 } else { (f.varphi - beta + alpha).rem_euclid(TAU) };
    CanonicalForm { vartheta: f.vartheta, varphi, n, m }
}
