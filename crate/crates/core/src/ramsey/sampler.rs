use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::su2::{displace_two_atoms, BlochDirection, TwoAtomState};

/// Number of shots, RNG seed and detection efficiency for one simulated run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShotPlan {
    pub shots: u64,
    pub seed: u64,
    /// Probability that an atom in `|+⟩` is registered as such.
    pub efficiency: f64,
}

impl ShotPlan {
    pub fn new(shots: u64, seed: u64) -> Result<Self> {
        Self::with_efficiency(shots, seed, 1.0)
    }

    pub fn with_efficiency(shots: u64, seed: u64, efficiency: f64) -> Result<Self> {
        let plan = Self { shots, seed, efficiency };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(domain("at least one shot is required"));
        }
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(domain(format!("efficiency {} outside (0, 1]", self.efficiency)));
        }
        Ok(())
    }
}

/// Coincidence counts over `L` shots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tally {
    pub n_pp: u64,
    pub n_pm: u64,
    pub n_mp: u64,
    pub n_mm: u64,
}

impl Tally {
    pub fn shots(&self) -> u64 {
        self.n_pp + self.n_pm + self.n_mp + self.n_mm
    }

    pub fn counts(&self) -> [u64; 4] {
        [self.n_pp, self.n_pm, self.n_mp, self.n_mm]
    }

    pub fn merge(&self, other: &Tally) -> Tally {
        Tally {
            n_pp: self.n_pp + other.n_pp,
            n_pm: self.n_pm + other.n_pm,
            n_mp: self.n_mp + other.n_mp,
            n_mm: self.n_mm + other.n_mm,
        }
    }
}

/// SplitMix64 finalizer: `z = x + 0x9E3779B97F4A7C15`, then two
/// xor-shift-multiply rounds with constants `0xBF58476D1CE4E5B9`,
/// `0x94D049BB133111EB` and a final `z ^ (z >> 31)`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Probabilities of `(++, +−, −+, −−)` after displacing `psi` by `(n1, n2)`.
pub fn outcome_distribution(psi: &TwoAtomState, n1: BlochDirection, n2: BlochDirection) -> [f64; 4] {
    displace_two_atoms(psi, n1, n2).amps().map(|a| a.norm_sqr())
}

/// Simulates `plan.shots` projective readouts of the displaced pair.
///
/// Shots are drawn from ChaCha8 seeded by `seed_from_u64(plan.seed)`. Each
/// shot consumes one uniform `f64` to pick the joint outcome; when
/// `efficiency < 1` every atom found in `|+⟩` consumes one more uniform to
/// decide whether the detection is missed (read as `|−⟩`).
pub fn simulate_shots(psi: &TwoAtomState, n1: BlochDirection, n2: BlochDirection, plan: &ShotPlan) -> Tally {
    let probs = outcome_distribution(psi, n1, n2);
    let total: f64 = probs.iter().sum();
    let mut cumulative = [0.0; 4];
    let mut acc = 0.0;
    for k in 0..4 {
        acc += probs[k] / total;
        cumulative[k] = acc;
    }
    // rounding can leave the last threshold just below 1; send that sliver to
    // the last outcome that actually has weight
    let fallback = (0..4).rev().find(|&k| probs[k] > 0.0).unwrap_or(0);

    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let lossy = plan.efficiency < 1.0;
    let mut counts = [0u64; 4];
    for _ in 0..plan.shots {
        let u: f64 = rng.random();
        let mut k = cumulative.iter().position(|&c| u < c).unwrap_or(fallback);
        if lossy {
            let mut up1 = k < 2;
            let mut up2 = k % 2 == 0;
            if up1 {
                up1 = rng.random::<f64>() < plan.efficiency;
            }
            if up2 {
                up2 = rng.random::<f64>() < plan.efficiency;
            }
            k = 2 * (!up1 as usize) + (!up2 as usize);
        }
        counts[k] += 1;
    }
    Tally { n_pp: counts[0], n_pm: counts[1], n_mp: counts[2], n_mm: counts[3] }
}
