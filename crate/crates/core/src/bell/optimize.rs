//! Search for extremal Γ over analyzer settings.
//!
//! A coarse grid over the fixed-reference settings (`a = b = ẑ`, free
//! `a′`, `b′`) plus the equal-tilt `θ = π/3` seeds picks the starting points;
//! each is then refined by Nelder-Mead. Refinements are independent and run
//! in parallel, and the reduction keeps the lowest-index start on ties, so
//! the result depends only on the state and the configuration.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canonical::canonical_form;
use super::gamma::{gamma, CHSettings, GammaResult};
use super::nelder_mead::NelderMead;
use crate::error::{config, Result};
use crate::su2::{rotation_qubit, BlochDirection, TwoAtomState};

/// Smallest evaluation budget accepted by [`optimize_gamma`].
pub const MIN_BUDGET: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Minimize,
    Maximize,
}

/// Which analyzer directions the search may move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SettingsFreedom {
    /// `a = b = ẑ`; only `a′` and `b′` move (4 angles).
    Pinned,
    /// `a` and `b` fixed to the leading Schmidt directions of the state; only
    /// `a′` and `b′` move. Equivalent to [`Pinned`](Self::Pinned) on the
    /// state's η representative.
    SchmidtFrame,
    /// All four directions move (8 angles).
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizeConfig {
    pub objective: Objective,
    /// Total number of Γ evaluations, at least [`MIN_BUDGET`].
    pub budget: u64,
    /// Grid points per angle for the coarse stage; shrunk to fit half the budget.
    pub grid: usize,
    /// Number of refined starting points.
    pub restarts: usize,
    pub freedom: SettingsFreedom,
    /// Seeds the random extra starts used by [`SettingsFreedom::Full`].
    pub seed: u64,
}

impl OptimizeConfig {
    pub fn new(objective: Objective) -> Self {
        Self { objective, budget: 20_000, grid: 12, restarts: 8, freedom: SettingsFreedom::Pinned, seed: 0 }
    }

    pub fn with_freedom(mut self, freedom: SettingsFreedom) -> Self {
        self.freedom = freedom;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget < MIN_BUDGET {
            return Err(config(format!("budget {} below minimum {}", self.budget, MIN_BUDGET)));
        }
        if self.grid < 2 {
            return Err(config("grid needs at least 2 points per angle"));
        }
        if self.restarts == 0 {
            return Err(config("at least one restart is required"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizeReport {
    pub best: GammaResult,
    pub evaluations: u64,
    pub config: OptimizeConfig,
}

fn dir(theta: f64, phi: f64) -> BlochDirection {
    BlochDirection::new(theta, phi).unwrap_or(BlochDirection::ZENITH)
}

fn settings_from(x: &[f64]) -> CHSettings {
    match x.len() {
        4 => CHSettings::pinned(dir(x[0], x[1]), dir(x[2], x[3])),
        8 => CHSettings::new(dir(x[0], x[1]), dir(x[2], x[3]), dir(x[4], x[5]), dir(x[6], x[7])),
        n => unreachable!("parameter vector of length {n}"),
    }
}

fn embed_full(x: &[f64]) -> Vec<f64> {
    vec![0.0, 0.0, x[0], x[1], 0.0, 0.0, x[2], x[3]]
}

/// Finds the extremal Γ for `psi` within the configured budget.
pub fn optimize_gamma(psi: &TwoAtomState, cfg: &OptimizeConfig) -> Result<OptimizeReport> {
    cfg.validate()?;
    let (best, evaluations) = match cfg.freedom {
        SettingsFreedom::Pinned => search(psi, cfg, false),
        SettingsFreedom::Full => search(psi, cfg, true),
        SettingsFreedom::SchmidtFrame => {
            let canon = canonical_form(psi);
            let (on_eta, evals) = search(&canon.eta(), cfg, false);
            let s = on_eta.settings.rotated(&rotation_qubit(canon.n), &rotation_qubit(canon.m));
            (gamma(psi, &s), evals)
        }
    };
    Ok(OptimizeReport { best, evaluations, config: *cfg })
}

fn search(psi: &TwoAtomState, cfg: &OptimizeConfig, full: bool) -> (GammaResult, u64) {
    let sign = match cfg.objective {
        Objective::Minimize => 1.0,
        Objective::Maximize => -1.0,
    };
    let objective = |x: &[f64]| sign * gamma(psi, &settings_from(x)).gamma;

    // coarse stage on (θa′, φa′, θb′, φb′)
    let max_grid = ((cfg.budget / 2) as f64).powf(0.25).floor() as usize;
    let g = cfg.grid.min(max_grid).max(2);
    let thetas: Vec<f64> = (0..g).map(|k| PI * k as f64 / (g - 1) as f64).collect();
    let phis: Vec<f64> = (0..g).map(|k| TAU * k as f64 / g as f64).collect();
    let mut candidates: Vec<Vec<f64>> = Vec::with_capacity(g.pow(4) + 32);
    for &t1 in &thetas {
        for &p1 in &phis {
            for &t2 in &thetas {
                for &p2 in &phis {
                    candidates.push(vec![t1, p1, t2, p2]);
                }
            }
        }
    }
    for &tilt in &[FRAC_PI_3, PI - FRAC_PI_3] {
        for k in 0..8 {
            candidates.push(vec![tilt, 0.0, tilt, k as f64 * FRAC_PI_4]);
        }
    }
    let mut scored: Vec<(f64, Vec<f64>)> = candidates.into_iter().map(|x| (objective(&x), x)).collect();
    let mut used = scored.len() as u64;
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(cfg.restarts);
    for (_, x) in &scored {
        if starts.len() == cfg.restarts {
            break;
        }
        let far = starts.iter().all(|s| s.iter().zip(x).map(|(a, b)| (a - b).abs()).sum::<f64>() > 0.2);
        if far {
            starts.push(x.clone());
        }
    }
    let mut starts: Vec<Vec<f64>> = if full { starts.iter().map(|x| embed_full(x)).collect() } else { starts };
    if full {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let extra = cfg.restarts.div_ceil(2);
        for _ in 0..extra {
            starts.push((0..8).map(|k| if k % 2 == 0 { rng.random::<f64>() * PI } else { rng.random::<f64>() * TAU }).collect());
        }
    }

    let remaining = cfg.budget.saturating_sub(used);
    let share = remaining / starts.len() as u64;
    let nm = NelderMead { step: 0.25, ftol: 1e-14, max_evals: share };
    let refined: Vec<(f64, Vec<f64>, u64)> = if share == 0 {
        Vec::new()
    } else {
        starts
            .par_iter()
            .map(|x0| {
                let m = nm.minimize(objective, x0);
                (m.f, m.x, m.evals)
            })
            .collect()
    };

    let (mut best_f, mut best_x) = {
        let (f, x) = &scored[0];
        (*f, if full { embed_full(x) } else { x.clone() })
    };
    for (f, x, evals) in refined {
        used += evals;
        if f < best_f {
            best_f = f;
            best_x = x;
        }
    }
    (gamma(psi, &settings_from(&best_x)), used)
}
