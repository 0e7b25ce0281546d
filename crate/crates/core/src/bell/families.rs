use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::su2::TwoAtomState;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `2^{−1/2}(|+−⟩ + e^{iφ}|−+⟩)`; the singlet at `φ = π`, the `m = 0` triplet at `φ = 0`.
pub fn u_state(varphi: f64) -> TwoAtomState {
    TwoAtomState::from_amps([ZERO, Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::from_polar(FRAC_1_SQRT_2, varphi), ZERO])
        .expect("unit norm by construction")
}

/// `2^{−1/2}(|++⟩ + e^{iφ}|−−⟩)`.
pub fn v_state(varphi: f64) -> TwoAtomState {
    eta_state(std::f64::consts::FRAC_PI_4, varphi)
}

/// `cosϑ|++⟩ + sinϑ e^{iφ}|−−⟩`.
pub fn eta_state(vartheta: f64, varphi: f64) -> TwoAtomState {
    let (s, c) = vartheta.sin_cos();
    TwoAtomState::from_amps([Complex64::new(c, 0.0), ZERO, ZERO, Complex64::from_polar(s, varphi)])
        .expect("unit norm by construction")
}

/// One of the entangled families with known Γ behaviour.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum EntangledFamily {
    U { varphi: f64 },
    V { varphi: f64 },
    Eta { vartheta: f64, varphi: f64 },
}

impl EntangledFamily {
    pub fn state(&self) -> TwoAtomState {
        match *self {
            EntangledFamily::U { varphi } => u_state(varphi),
            EntangledFamily::V { varphi } => v_state(varphi),
            EntangledFamily::Eta { vartheta, varphi } => eta_state(vartheta, varphi),
        }
    }
}
