//! Parsing of state, settings and angle arguments.

use std::f64::consts::PI;
use std::path::Path;

use atombell_core::bell::{CHSettings, EntangledFamily};
use atombell_core::su2::{BlochDirection, ComplexAmp, TwoAtomState};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Deviation of the input norm from 1 above which a warning is printed.
pub const NORM_WARN_TOL: f64 = 1e-6;

/// A two-atom pure state as written by users.
///
/// Amplitudes are `[re, im]` pairs in the order `(++, +−, −+, −−)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Family(EntangledFamily),
    Amps { amps: [[f64; 2]; 4] },
    Product { product: [BlochDirection; 2] },
}

impl StateSpec {
    pub fn from_state(psi: &TwoAtomState) -> Self {
        StateSpec::Amps { amps: psi.amps().map(|z| [z.re, z.im]) }
    }

    /// The normalized state, with a warning on stderr if the input norm is off.
    pub fn resolve(&self) -> Result<TwoAtomState, CliError> {
        match self {
            StateSpec::Family(f) => Ok(f.state()),
            StateSpec::Product { product: [n, m] } => Ok(TwoAtomState::coherent_product(*n, *m)),
            StateSpec::Amps { amps } => {
                if amps.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(CliError::Input("amplitudes must be finite".into()));
                }
                let z = amps.map(|[re, im]| ComplexAmp::new(re, im));
                let norm = z.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > NORM_WARN_TOL {
                    eprintln!("warning: state norm is {norm}, normalizing");
                }
                TwoAtomState::normalized(z).map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }
}

/// Settings given to `sample`.
#[derive(Clone, Debug, PartialEq)]
pub enum SettingsSpec {
    Optimal,
    Zero,
    Explicit(CHSettings),
}

/// Inline JSON if the argument looks like an object, otherwise a file path.
fn json_text(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))
}

pub fn parse_state(arg: &str) -> Result<StateSpec, CliError> {
    serde_json::from_str(&json_text(arg)?).map_err(|e| CliError::Input(format!("invalid state: {e}")))
}

pub fn parse_settings(arg: &str) -> Result<SettingsSpec, CliError> {
    match arg.trim() {
        "optimal" => Ok(SettingsSpec::Optimal),
        "zero" => Ok(SettingsSpec::Zero),
        other => serde_json::from_str(&json_text(other)?)
            .map(SettingsSpec::Explicit)
            .map_err(|e| CliError::Input(format!("invalid settings: {e}"))),
    }
}

/// An angle in radians: a plain number, or a multiple of `pi` such as `pi`,
/// `-pi/3`, `2pi/3` or `0.5*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let value = match t.find("pi") {
        None => t.parse::<f64>().map_err(|_| format!("not an angle: {s}"))?,
        Some(at) => {
            let coeff = t[..at].trim_end_matches('*').trim();
            let coeff = match coeff {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| format!("not an angle: {s}"))?,
            };
            let rest = t[at + 2..].trim();
            let div = match rest.strip_prefix('/') {
                None if rest.is_empty() => 1.0,
                None => return Err(format!("not an angle: {s}")),
                Some(d) => d.trim().parse::<f64>().map_err(|_| format!("not an angle: {s}"))?,
            };
            coeff * PI / div
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle must be finite: {s}"))
    }
}

pub fn parse_efficiency(s: &str) -> Result<f64, String> {
    let e: f64 = s.trim().parse().map_err(|_| format!("not a number: {s}"))?;
    if e > 0.0 && e <= 1.0 {
        Ok(e)
    } else {
        Err(format!("efficiency must lie in (0, 1], got {e}"))
    }
}
