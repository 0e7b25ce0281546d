use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A point on the unit sphere: polar angle `theta` from +z and azimuth `phi`.
///
/// Always stored canonically: `theta ∈ [0, π]`, `phi ∈ [0, 2π)`, and `phi = 0`
/// at either pole.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDirection")]
pub struct BlochDirection {
    theta: f64,
    phi: f64,
}

#[derive(Deserialize)]
struct RawDirection {
    theta: f64,
    phi: f64,
}

impl TryFrom<RawDirection> for BlochDirection {
    type Error = Error;

    fn try_from(raw: RawDirection) -> Result<Self> {
        Self::new(raw.theta, raw.phi)
    }
}

fn wrap_turn(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly 2π
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl BlochDirection {
    /// The +z direction, i.e. no displacement.
    pub const ZENITH: BlochDirection = BlochDirection { theta: 0.0, phi: 0.0 };
    /// The −z direction.
    pub const NADIR: BlochDirection = BlochDirection { theta: PI, phi: 0.0 };

    /// Canonicalizes arbitrary finite angles onto the sphere.
    ///
    /// A polar angle outside `[0, π]` is folded back through the pole, which
    /// shifts the azimuth by π; the resulting unit vector is the same as the
    /// one given by the raw angles.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(domain(format!("non-finite direction ({theta}, {phi})")));
        }
        let mut theta = wrap_turn(theta);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        let phi = if theta == 0.0 || theta == PI { 0.0 } else { wrap_turn(phi) };
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn dot(&self, other: &BlochDirection) -> f64 {
        let a = self.unit_vector();
        let b = other.unit_vector();
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    /// Inverse of [`unit_vector`](Self::unit_vector). The input need not be
    /// normalized but must be nonzero and finite.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !r.is_finite() || r == 0.0 {
            return Err(domain("cannot take the direction of a zero vector"));
        }
        let rho = v[0].hypot(v[1]);
        Self::new(rho.atan2(v[2]), v[1].atan2(v[0]))
    }

    pub fn antipode(&self) -> Self {
        // canonical inputs never fail
        Self::new(PI - self.theta, self.phi + PI).expect("finite angles")
    }
}

impl fmt::Display for BlochDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(θ={:.6}, φ={:.6})", self.theta, self.phi)
    }
}
