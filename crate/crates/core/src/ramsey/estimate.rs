use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::{simulate_shots, splitmix64, ShotPlan, Tally};
use crate::bell::{gamma, violation, CHSettings};
use crate::error::{domain, Result};
use crate::su2::{BlochDirection, TwoAtomState};

/// A sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub shots: u64,
}

impl Estimate {
    /// Binomial proportion `count / shots` with `√(p(1−p)/L)`.
    pub fn proportion(count: u64, shots: u64) -> Self {
        let p = count as f64 / shots as f64;
        Self { value: p, std_error: (p * (1.0 - p) / shots as f64).sqrt(), shots }
    }
}

/// Single-atom and coincidence upper-level probabilities from one tally.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QEstimates {
    pub q1: Estimate,
    pub q2: Estimate,
    pub q12: Estimate,
}

pub fn estimate_q(t: &Tally) -> Result<QEstimates> {
    let l = t.shots();
    if l == 0 {
        return Err(domain("empty tally"));
    }
    Ok(QEstimates {
        q1: Estimate::proportion(t.n_pp + t.n_pm, l),
        q2: Estimate::proportion(t.n_pp + t.n_mp, l),
        q12: Estimate::proportion(t.n_pp, l),
    })
}

/// Variance of `Σ_k w_k n_k / L` under the multinomial law of `t`, with the
/// cell probabilities replaced by their estimates.
pub fn multinomial_variance(t: &Tally, weights: [f64; 4]) -> f64 {
    let l = t.shots() as f64;
    let p = t.counts().map(|c| c as f64 / l);
    let mean: f64 = (0..4).map(|k| weights[k] * p[k]).sum();
    let second: f64 = (0..4).map(|k| weights[k] * weights[k] * p[k]).sum();
    ((second - mean * mean) / l).max(0.0)
}

/// One simulated experiment at a fixed pair of analyzer directions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettingRun {
    pub n1: BlochDirection,
    pub n2: BlochDirection,
    pub seed: u64,
    pub tally: Tally,
    pub estimates: QEstimates,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaEstimate {
    pub gamma: Estimate,
    /// Runs at `(a,b)`, `(a′,b)`, `(a,b′)`, `(a′,b′)` in that order.
    pub runs: [SettingRun; 4],
}

/// Seed of run `k ∈ 1..=4`: `splitmix64(seed + k)`.
pub fn run_seed(seed: u64, k: u64) -> u64 {
    splitmix64(seed.wrapping_add(k))
}

/// Measures Γ with four independent runs of `plan.shots` shots each.
///
/// `Q̂₁(a)` and `Q̂₂(b)` come from the `(a,b)` run, so that run contributes
/// `Q̂₁₂ − Q̂₁ − Q̂₂ = n₋₋/L − 1` whose variance is taken from its own
/// multinomial; the other three runs add their binomial variances.
pub fn estimate_gamma(psi: &TwoAtomState, s: &CHSettings, plan: &ShotPlan) -> Result<GammaEstimate> {
    plan.validate()?;
    let pairs = [(s.a, s.b), (s.a_prime, s.b), (s.a, s.b_prime), (s.a_prime, s.b_prime)];
    let runs: Vec<SettingRun> = pairs
        .par_iter()
        .enumerate()
        .map(|(k, &(n1, n2))| {
            let seed = run_seed(plan.seed, k as u64 + 1);
            let tally = simulate_shots(psi, n1, n2, &ShotPlan { seed, ..*plan });
            let estimates = estimate_q(&tally).expect("plan has at least one shot");
            SettingRun { n1, n2, seed, tally, estimates }
        })
        .collect();
    let runs: [SettingRun; 4] = runs.try_into().expect("four setting pairs");

    let base = &runs[0];
    let value = base.estimates.q12.value + runs[1].estimates.q12.value + runs[2].estimates.q12.value
        - runs[3].estimates.q12.value
        - base.estimates.q1.value
        - base.estimates.q2.value;
    // (pp, pm, mp, mm) weights of Q̂₁₂ − Q̂₁ − Q̂₂
    let var = multinomial_variance(&base.tally, [-1.0, -1.0, -1.0, 0.0])
        + runs[1..].iter().map(|r| r.estimates.q12.std_error.powi(2)).sum::<f64>();
    Ok(GammaEstimate { gamma: Estimate { value, std_error: var.sqrt(), shots: plan.shots }, runs })
}

/// Mean of Γ̂ when each `|+⟩` detection succeeds with probability `efficiency`:
/// coincidence terms scale by `e²`, single-atom terms by `e`.
pub fn expected_gamma(psi: &TwoAtomState, s: &CHSettings, efficiency: f64) -> f64 {
    let t = gamma(psi, s).terms;
    let coincidences = t.q12_a_b + t.q12_ap_b + t.q12_a_bp - t.q12_ap_bp;
    efficiency * efficiency * coincidences - efficiency * (t.q1_a + t.q2_b)
}

/// Smallest efficiency `e*` such that the expected Γ̂ lies outside `[−1, 0]`
/// for every efficiency in `(e*, 1]`; `None` if there is no violation even at
/// unit efficiency (violations below `1e-12` count as none).
pub fn critical_efficiency(psi: &TwoAtomState, s: &CHSettings) -> Option<f64> {
    if violation(expected_gamma(psi, s, 1.0)) <= crate::EXACT_TOL {
        return None;
    }
    let t = gamma(psi, s).terms;
    let a = t.q12_a_b + t.q12_ap_b + t.q12_a_bp - t.q12_ap_bp;
    let b = t.q1_a + t.q2_b;
    // crossings of a e² − b e = 0 and a e² − b e + 1 = 0 inside (0, 1)
    let mut roots = Vec::new();
    if a != 0.0 {
        roots.push(b / a);
    }
    roots.extend(quadratic_roots(a, -b, 1.0));
    Some(roots.into_iter().filter(|&r| r > 0.0 && r < 1.0).fold(0.0, f64::max))
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut r = vec![q / a];
    if q != 0.0 {
        r.push(c / q);
    }
    r
}
