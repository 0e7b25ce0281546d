//! Clauser-Horne combination Γ over joint Q functions, the entangled families
//! with closed-form Γ, deterministic local strategies and extremal-Γ search.

mod canonical;
mod families;
mod gamma;
mod lhv;
mod nelder_mead;
mod optimize;

pub use canonical::{canonical_form, CanonicalForm};
pub use families::{eta_state, u_state, v_state, EntangledFamily};
pub use gamma::{
    analytic_gamma_u, analytic_gamma_v, equal_tilt_settings, gamma, violation, CHSettings, GammaResult, GammaTerms,
    LHV_LOWER, LHV_UPPER,
};
pub use lhv::{lhv_vertices, mixture_gamma, LocalStrategy};
pub use optimize::{optimize_gamma, Objective, OptimizeConfig, OptimizeReport, SettingsFreedom, MIN_BUDGET};
