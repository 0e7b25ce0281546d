use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::su2::BlochDirection;

/// Below this ratio `|ω⊥| / |ω₀ − ω|` free precession during the clock pulse
/// is no longer negligible.
pub const REGIME_RATIO: f64 = 10.0;

/// One Ramsey step for a single atom: free evolution for `t_phi`, then a
/// resonant clock pulse for `t_theta`. Frequencies in rad/s, times in s.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseSequence {
    pub omega0: f64,
    pub omega: f64,
    pub omega_perp: f64,
    pub t_phi: f64,
    pub t_theta: f64,
}

impl PulseSequence {
    pub fn new(omega0: f64, omega: f64, omega_perp: f64, t_phi: f64, t_theta: f64) -> Result<Self> {
        let p = Self { omega0, omega, omega_perp, t_phi, t_theta };
        p.validate()?;
        Ok(p)
    }

    /// A sequence with the given detuning and Rabi rate that realizes the
    /// rotation angles `(theta, phi)`.
    pub fn for_angles(omega0: f64, omega: f64, omega_perp: f64, theta: f64, phi: f64) -> Result<Self> {
        let detuning = omega0 - omega;
        let duration = |angle: f64, rate: f64, what: &str| -> Result<f64> {
            if angle == 0.0 {
                return Ok(0.0);
            }
            if rate == 0.0 {
                return Err(domain(format!("{what} rate is zero, cannot realize angle {angle}")));
            }
            // durations are non-negative: reach negative angles by going the long way round
            Ok((angle / rate).rem_euclid(std::f64::consts::TAU * 2.0 / rate.abs()))
        };
        Self::new(omega0, omega, omega_perp, duration(phi, detuning, "detuning")?, duration(theta, omega_perp, "Rabi")?)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.omega0, self.omega, self.omega_perp, self.t_phi, self.t_theta];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(domain("pulse parameters must be finite"));
        }
        if self.omega0 <= 0.0 {
            return Err(domain("atomic transition frequency must be positive"));
        }
        if self.t_phi < 0.0 || self.t_theta < 0.0 {
            return Err(domain("pulse durations must be non-negative"));
        }
        Ok(())
    }

    pub fn detuning(&self) -> f64 {
        self.omega0 - self.omega
    }

    /// Clock-pulse rotation angle `ω⊥ T_θ`.
    pub fn theta(&self) -> f64 {
        self.omega_perp * self.t_theta
    }

    /// Free-evolution angle `(ω₀ − ω) T_φ`.
    pub fn phi(&self) -> f64 {
        self.detuning() * self.t_phi
    }

    /// True when `|ω⊥| < 10 |ω₀ − ω|`, i.e. the pulse is not fast compared to
    /// the detuning and the pure y-rotation model is questionable.
    pub fn regime_warning(&self) -> bool {
        self.omega_perp.abs() < REGIME_RATIO * self.detuning().abs()
    }
}

/// Displacement direction produced by the sequence. Reading out `|+⟩`
/// afterwards projects onto the coherent state of this direction.
pub fn pulses_to_direction(p: &PulseSequence) -> BlochDirection {
    BlochDirection::new(p.theta(), p.phi()).expect("validated pulse parameters are finite")
}

/// `e^{iθS_y} e^{iφS_z}`: rotation about z by −φ, then about y by −θ.
pub fn pulse_unitary(p: &PulseSequence) -> Matrix2<Complex64> {
    let (s, c) = (p.theta() / 2.0).sin_cos();
    let y = Matrix2::new(Complex64::from(c), Complex64::from(s), Complex64::from(-s), Complex64::from(c));
    let half = p.phi() / 2.0;
    let z = Matrix2::new(Complex64::from_polar(1.0, half), Complex64::from(0.0), Complex64::from(0.0), Complex64::from_polar(1.0, -half));
    y * z
}
