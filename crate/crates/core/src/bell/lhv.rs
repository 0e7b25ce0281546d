use serde::{Deserialize, Serialize};

/// A deterministic local strategy: the pre-assigned upper-level outcome of
/// each atom at each of its two analyzer settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalStrategy {
    pub q1_a: bool,
    pub q1_a_prime: bool,
    pub q2_b: bool,
    pub q2_b_prime: bool,
}

impl LocalStrategy {
    /// Strategy number `k ∈ 0..16`, bits ordered `(q₁(a), q₁(a′), q₂(b), q₂(b′))`
    /// from most to least significant.
    pub fn from_index(k: u8) -> Self {
        Self { q1_a: k & 8 != 0, q1_a_prime: k & 4 != 0, q2_b: k & 2 != 0, q2_b_prime: k & 1 != 0 }
    }

    /// Γ with `Q₁₂ = q₁q₂` and `Q_r = q_r`.
    pub fn gamma(&self) -> i32 {
        let (a, ap, b, bp) = (self.q1_a as i32, self.q1_a_prime as i32, self.q2_b as i32, self.q2_b_prime as i32);
        a * b + ap * b + a * bp - ap * bp - a - b
    }
}

/// All 16 deterministic strategies with their Γ values.
pub fn lhv_vertices() -> Vec<(LocalStrategy, f64)> {
    (0..16u8).map(LocalStrategy::from_index).map(|s| (s, s.gamma() as f64)).collect()
}

/// Γ of a convex mixture of the vertices. `weights` are normalized internally.
pub fn mixture_gamma(weights: &[f64; 16]) -> f64 {
    let total: f64 = weights.iter().sum();
    lhv_vertices().iter().zip(weights).map(|((_, g), w)| g * w).sum::<f64>() / total
}
