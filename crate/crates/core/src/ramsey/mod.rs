//! Ramsey population spectroscopy: pulse-to-rotation mapping and finite-shot
//! estimation of Q functions and Γ.

mod estimate;
mod pulse;
mod sampler;

pub use estimate::{
    critical_efficiency, estimate_gamma, estimate_q, expected_gamma, multinomial_variance, run_seed, Estimate,
    GammaEstimate, QEstimates, SettingRun,
};
pub use pulse::{pulse_unitary, pulses_to_direction, PulseSequence, REGIME_RATIO};
pub use sampler::{outcome_distribution, simulate_shots, splitmix64, ShotPlan, Tally};
