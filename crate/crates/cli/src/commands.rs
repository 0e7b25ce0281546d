//! The five subcommands. Each returns an [`Output`] for rendering.

use std::f64::consts::{PI, TAU};

use atombell_core::bell::{
    analytic_gamma_u, analytic_gamma_v, equal_tilt_settings, gamma, lhv_vertices, optimize_gamma, u_state, v_state, violation,
    CHSettings, Objective, OptimizeConfig, OptimizeReport, SettingsFreedom,
};
use atombell_core::ramsey::{critical_efficiency, estimate_gamma, expected_gamma, ShotPlan};
use atombell_core::su2::{entanglement_angle, joint_q, marginal_q, Atom, BlochDirection, TwoAtomState};
use serde_json::json;

use crate::input::{SettingsSpec, StateSpec};
use crate::output::Output;
use crate::CliError;

/// Margin outside `[−1, 0]` reported as a violation.
pub const VIOLATION_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ObjectiveArg {
    Min,
    Max,
    /// Both directions; keep the larger violation.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FreedomArg {
    Pinned,
    Full,
    SchmidtFrame,
}

impl From<FreedomArg> for SettingsFreedom {
    fn from(f: FreedomArg) -> Self {
        match f {
            FreedomArg::Pinned => SettingsFreedom::Pinned,
            FreedomArg::Full => SettingsFreedom::Full,
            FreedomArg::SchmidtFrame => SettingsFreedom::SchmidtFrame,
        }
    }
}

/// Search parameters shared by `optimize` and `sample --settings optimal`.
#[derive(Clone, Copy, Debug)]
pub struct Search {
    pub objective: ObjectiveArg,
    pub freedom: FreedomArg,
    pub budget: u64,
    pub grid: usize,
    pub seed: u64,
}

/// Rows `(theta, gamma_analytic, gamma_numeric, abs_diff)` with `a′ = (θ, offset)`,
/// `b′ = (θ, 0)`. The default offset is the optimal one for the family.
pub fn gamma_scan(family: Family, varphi: f64, offset: Option<f64>, thetas: &[f64]) -> Result<Output, CliError> {
    let (psi, closed_form): (TwoAtomState, fn(f64, f64, f64, f64) -> f64) = match family {
        Family::U => (u_state(varphi), analytic_gamma_u),
        Family::V => (v_state(varphi), analytic_gamma_v),
    };
    let offset = offset.unwrap_or(match family {
        Family::U => varphi,
        Family::V => varphi + PI,
    });
    let rows = thetas
        .iter()
        .map(|&theta| {
            let s = equal_tilt_settings(theta, offset, 0.0)?;
            let analytic = closed_form(theta, offset, 0.0, varphi);
            let numeric = gamma(&psi, &s).gamma;
            Ok(vec![theta, analytic, numeric, (analytic - numeric).abs()])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Output::Table { header: vec!["theta", "gamma_analytic", "gamma_numeric", "abs_diff"], rows, footer: None })
}

fn search(psi: &TwoAtomState, s: &Search) -> Result<OptimizeReport, CliError> {
    let run = |objective| {
        let cfg = OptimizeConfig { budget: s.budget, grid: s.grid, freedom: s.freedom.into(), seed: s.seed, ..OptimizeConfig::new(objective) };
        optimize_gamma(psi, &cfg)
    };
    Ok(match s.objective {
        ObjectiveArg::Min => run(Objective::Minimize)?,
        ObjectiveArg::Max => run(Objective::Maximize)?,
        ObjectiveArg::Auto => {
            let (lo, hi) = (run(Objective::Minimize)?, run(Objective::Maximize)?);
            if hi.best.violation() > lo.best.violation() {
                hi
            } else {
                lo
            }
        }
    })
}

pub fn optimize(spec: &StateSpec, s: &Search) -> Result<Output, CliError> {
    let psi = spec.resolve()?;
    let report = search(&psi, s)?;
    let v = report.best.violation();
    Ok(Output::Report(json!({
        "state": StateSpec::from_state(&psi),
        "gamma": report.best.gamma,
        "violation": v,
        "violates": v > VIOLATION_TOL,
        "settings": report.best.settings,
        "terms": report.best.terms,
        "schmidt_angle": entanglement_angle(&psi),
        "evaluations": report.evaluations,
        "config": report.config,
    })))
}

pub fn sample(spec: &StateSpec, settings: &SettingsSpec, plan: &ShotPlan, s: &Search) -> Result<Output, CliError> {
    let psi = spec.resolve()?;
    let (settings, source) = match settings {
        SettingsSpec::Optimal => (search(&psi, s)?.best.settings, "optimal"),
        SettingsSpec::Zero => (CHSettings::uniform(BlochDirection::ZENITH), "zero"),
        SettingsSpec::Explicit(c) => (*c, "explicit"),
    };
    let est = estimate_gamma(&psi, &settings, plan)?;
    let exact = gamma(&psi, &settings).gamma;
    let expected = expected_gamma(&psi, &settings, plan.efficiency);
    let sigma = est.gamma.std_error;
    let per_sigma = |x: f64| if sigma > 0.0 { Some(x / sigma) } else { None };
    Ok(Output::Report(json!({
        "state": StateSpec::from_state(&psi),
        "settings": settings,
        "settings_source": source,
        "plan": plan,
        "runs": est.runs,
        "gamma_hat": est.gamma,
        "gamma_exact": exact,
        "gamma_expected": expected,
        "deviation_sigma": per_sigma(est.gamma.value - expected),
        "violation_sigma": per_sigma(violation(est.gamma.value)),
        "critical_efficiency": critical_efficiency(&psi, &settings),
    })))
}

pub fn lhv() -> Output {
    let vertices = lhv_vertices();
    let rows: Vec<Vec<f64>> = vertices
        .iter()
        .map(|(v, g)| {
            let bit = |b: bool| if b { 1.0 } else { 0.0 };
            vec![bit(v.q1_a), bit(v.q1_a_prime), bit(v.q2_b), bit(v.q2_b_prime), *g]
        })
        .collect();
    let min = vertices.iter().map(|(_, g)| *g).fold(f64::INFINITY, f64::min);
    let max = vertices.iter().map(|(_, g)| *g).fold(f64::NEG_INFINITY, f64::max);
    Output::Table {
        header: vec!["q1_a", "q1_a_prime", "q2_b", "q2_b_prime", "gamma"],
        rows,
        footer: Some(format!("min = {min}, max = {max}")),
    }
}

/// `Q₁₂` and both marginals on `grid` polar angles in `[0, π]` times `grid`
/// azimuths in `[0, 2π)` for each atom.
pub fn qmap(spec: &StateSpec, grid: usize) -> Result<Output, CliError> {
    if grid < 2 {
        return Err(CliError::Usage("qmap needs --grid of at least 2".into()));
    }
    let psi = spec.resolve()?;
    let mut dirs = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        for k in 0..grid {
            let (theta, phi) = (PI * i as f64 / (grid - 1) as f64, TAU * k as f64 / grid as f64);
            dirs.push((theta, phi, BlochDirection::new(theta, phi)?));
        }
    }
    let q1: Vec<f64> = dirs.iter().map(|d| marginal_q(&psi, Atom::First, d.2)).collect();
    let q2: Vec<f64> = dirs.iter().map(|d| marginal_q(&psi, Atom::Second, d.2)).collect();
    let mut rows = Vec::with_capacity(dirs.len() * dirs.len());
    for (i, a) in dirs.iter().enumerate() {
        for (k, b) in dirs.iter().enumerate() {
            rows.push(vec![a.0, a.1, b.0, b.1, joint_q(&psi, a.2, b.2), q1[i], q2[k]]);
        }
    }
    Ok(Output::Table { header: vec!["theta1", "phi1", "theta2", "phi2", "q12", "q1", "q2"], rows, footer: None })
}
