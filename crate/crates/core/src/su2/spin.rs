use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::direction::BlochDirection;
use crate::error::{domain, Result};
use crate::EXACT_TOL;

/// Largest `2j` accepted by [`Spin::new`].
pub const DEFAULT_MAX_TWO_J: u32 = 5;
/// Beyond this the alternating factorial sum in [`wigner_d`] loses too many digits.
pub const HARD_MAX_TWO_J: u32 = 40;

/// A spin quantum number `j`, stored as the integer `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    two_j: u32,
}

impl Spin {
    pub const ZERO: Spin = Spin { two_j: 0 };
    pub const HALF: Spin = Spin { two_j: 1 };
    pub const ONE: Spin = Spin { two_j: 2 };

    /// `j = two_j / 2`, capped at [`DEFAULT_MAX_TWO_J`].
    pub fn new(two_j: u32) -> Result<Self> {
        Self::with_limit(two_j, DEFAULT_MAX_TWO_J)
    }

    /// Same as [`Spin::new`] with a caller-chosen cap (itself capped at
    /// [`HARD_MAX_TWO_J`]).
    pub fn with_limit(two_j: u32, max_two_j: u32) -> Result<Self> {
        let cap = max_two_j.min(HARD_MAX_TWO_J);
        if two_j > cap {
            return Err(domain(format!("j = {}/2 exceeds supported maximum {}/2", two_j, cap)));
        }
        Ok(Self { two_j })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Dimension `2j + 1` of the representation space.
    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// Magnetic quantum number of basis index `k` (`k = 0` is `m = j`).
    pub fn m(&self, k: usize) -> f64 {
        self.j() - k as f64
    }

    fn from_dim(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(domain("empty state space"));
        }
        Self::with_limit(dim as u32 - 1, HARD_MAX_TWO_J)
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `d^j_{m'm}(θ)` with `m' = j − row`, `m = j − col`, by the Wigner sum.
fn wigner_d_entry(two_j: u32, row: u32, col: u32, theta: f64) -> f64 {
    // all quantities below are integers: j±m = 2j − k or k
    let j_plus_mp = two_j - row;
    let j_minus_mp = row;
    let j_plus_m = two_j - col;
    let j_minus_m = col;
    // m' − m = col − row
    let diff = col as i64 - row as i64;
    let (s_half, c_half) = (theta / 2.0).sin_cos();
    let prefactor = (factorial(j_plus_mp) * factorial(j_minus_mp) * factorial(j_plus_m) * factorial(j_minus_m)).sqrt();
    let s_min = 0.max(-diff);
    let s_max = (j_plus_m as i64).min(j_minus_mp as i64);
    let mut sum = 0.0;
    for s in s_min..=s_max {
        let denom = factorial((j_plus_m as i64 - s) as u32)
            * factorial(s as u32)
            * factorial((diff + s) as u32)
            * factorial((j_minus_mp as i64 - s) as u32);
        let cos_pow = (two_j as i64 - diff - 2 * s) as i32;
        let sin_pow = (diff + 2 * s) as i32;
        let sign = if (diff + s).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sum += sign * c_half.powi(cos_pow) * s_half.powi(sin_pow) / denom;
    }
    prefactor * sum
}

/// Small Wigner matrix `d^j(θ) = ⟨j m'| e^{−iθJ_y} |j m⟩`, rows and columns
/// ordered by descending `m`.
pub fn wigner_d(spin: Spin, theta: f64) -> DMatrix<f64> {
    let n = spin.dim();
    if spin == Spin::HALF {
        let (s, c) = (theta / 2.0).sin_cos();
        return DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
    }
    DMatrix::from_fn(n, n, |r, c| wigner_d_entry(spin.two_j, r as u32, c as u32, theta))
}

/// A square complex matrix known to be unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(DMatrix<Complex64>);

impl UnitaryMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix(self.0.adjoint())
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.0.adjoint() * &self.0;
        let n = self.dim();
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((prod[(r, c)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    pub fn apply(&self, state: &SpinState) -> Result<SpinState> {
        if state.amps.len() != self.dim() {
            return Err(domain(format!(
                "operator of dimension {} applied to state of dimension {}",
                self.dim(),
                state.amps.len()
            )));
        }
        Ok(SpinState { spin: state.spin, amps: &self.0 * &state.amps })
    }
}

/// The group element `g(n) = e^{−iφJ_z} e^{−iθJ_y}`.
pub fn rotation_operator(spin: Spin, n: BlochDirection) -> UnitaryMatrix {
    let d = wigner_d(spin, n.theta());
    let dim = spin.dim();
    let phase: Vec<Complex64> = (0..dim).map(|k| Complex64::from_polar(1.0, -n.phi() * spin.m(k))).collect();
    UnitaryMatrix(DMatrix::from_fn(dim, dim, |r, c| phase[r] * d[(r, c)]))
}

/// Normalized pure state of a spin `j`, amplitudes ordered `m = j, …, −j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    spin: Spin,
    amps: DVector<Complex64>,
}

impl SpinState {
    /// Wraps amplitudes that are already normalized to within `1e-12`.
    pub fn from_amps(spin: Spin, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != spin.dim() {
            return Err(domain(format!("expected {} amplitudes for j = {}, got {}", spin.dim(), spin.j(), amps.len())));
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > EXACT_TOL {
            return Err(domain(format!("state norm² = {norm_sq}, expected 1")));
        }
        Ok(Self { spin, amps: DVector::from_vec(amps) })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(spin: Spin, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != spin.dim() {
            return Err(domain(format!("expected {} amplitudes, got {}", spin.dim(), amps.len())));
        }
        let v = DVector::from_vec(amps);
        let norm = v.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(domain("cannot normalize a zero or non-finite vector"));
        }
        Ok(Self { spin, amps: v.unscale(norm) })
    }

    /// `|j, j⟩`.
    pub fn highest_weight(spin: Spin) -> Self {
        let mut amps = DVector::zeros(spin.dim());
        amps[0] = Complex64::new(1.0, 0.0);
        Self { spin, amps }
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn amps(&self) -> &DVector<Complex64> {
        &self.amps
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SpinState) -> Result<Complex64> {
        if self.spin != other.spin {
            return Err(domain(format!("inner product between j = {} and j = {}", self.spin.j(), other.spin.j())));
        }
        Ok(self.amps.dotc(&other.amps))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }
}

/// `|j; n⟩ = g(n)|j, j⟩`, the first column of [`rotation_operator`].
pub fn coherent_state(spin: Spin, n: BlochDirection) -> SpinState {
    let dim = spin.dim();
    let amps = if spin == Spin::HALF {
        let (s, c) = (n.theta() / 2.0).sin_cos();
        DVector::from_vec(vec![Complex64::from_polar(1.0, -n.phi() / 2.0) * c, Complex64::from_polar(1.0, n.phi() / 2.0) * s])
    } else {
        DVector::from_fn(dim, |r, _| {
            Complex64::from_polar(1.0, -n.phi() * spin.m(r)) * wigner_d_entry(spin.two_j, r as u32, 0, n.theta())
        })
    };
    SpinState { spin, amps }
}

/// `⟨j; n | j; m⟩`.
pub fn coherent_overlap(spin: Spin, n: BlochDirection, m: BlochDirection) -> Complex64 {
    coherent_state(spin, n).amps.dotc(&coherent_state(spin, m).amps)
}

/// Anything with a Husimi Q function `Q(n) = ⟨j;n|ρ|j;n⟩`.
pub trait PhaseSpace {
    fn q_function(&self, n: BlochDirection) -> f64;
}

impl PhaseSpace for SpinState {
    fn q_function(&self, n: BlochDirection) -> f64 {
        coherent_state(self.spin, n).amps.dotc(&self.amps).norm_sqr()
    }
}

/// `Q(n)` for any state type implementing [`PhaseSpace`].
pub fn q_function<S: PhaseSpace + ?Sized>(state: &S, n: BlochDirection) -> f64 {
    state.q_function(n)
}

/// `Q(n)` for a dense density matrix whose spin is inferred from its dimension.
pub fn q_function_dense(rho: &DMatrix<Complex64>, n: BlochDirection) -> Result<f64> {
    if rho.nrows() != rho.ncols() {
        return Err(domain(format!("density matrix is {}×{}", rho.nrows(), rho.ncols())));
    }
    let spin = Spin::from_dim(rho.nrows())?;
    let coh = coherent_state(spin, n).amps;
    Ok(coh.dotc(&(rho * &coh)).re)
}
