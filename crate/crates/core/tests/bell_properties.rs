mod common;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI, TAU};

use atombell_core::bell::*;
use atombell_core::su2::*;
use common::*;
use proptest::prelude::*;
use rand::Rng;

/// Largest Γ of `η(ϑ, ·)` with `a = b = ẑ`, from maximizing
/// `C sinα sinβ − (1 − cosα)(1 − cosβ)` (`C = sin 2ϑ`) at `α = β`.
fn pinned_eta_max(vartheta: f64) -> f64 {
    let c = (2.0 * vartheta).sin();
    c * c / (4.0 * (1.0 + c))
}

/// Largest Γ over all projective settings: `(√(1 + C²) − 1)/2`, the CHSH
/// optimum `2√(1 + C²)` mapped through `Γ = (S − 2)/4`.
fn free_eta_max(vartheta: f64) -> f64 {
    let c = (2.0 * vartheta).sin();
    ((1.0 + c * c).sqrt() - 1.0) / 2.0
}

#[test]
fn analytic_formulas_match_numeric_gamma() {
    let mut r = rng(20);
    for _ in 0..1000 {
        let theta = r.random_range(-PI..2.0 * PI);
        let (phi, phi_p, varphi) = (r.random_range(-TAU..TAU), r.random_range(-TAU..TAU), r.random_range(-TAU..TAU));
        let s = equal_tilt_settings(theta, phi, phi_p).unwrap();
        let gu = gamma(&u_state(varphi), &s).gamma;
        let gv = gamma(&v_state(varphi), &s).gamma;
        assert!((analytic_gamma_u(theta, phi, phi_p, varphi) - gu).abs() < 1e-10);
        assert!((analytic_gamma_v(theta, phi, phi_p, varphi) - gv).abs() < 1e-10);
    }
}

#[test]
fn each_family_violates_on_one_side_only() {
    let mut r = rng(21);
    for _ in 0..2000 {
        let args: [f64; 4] = [r.random_range(0.0..PI), r.random_range(0.0..TAU), r.random_range(0.0..TAU), r.random_range(0.0..TAU)];
        assert!(analytic_gamma_u(args[0], args[1], args[2], args[3]) <= 1e-15);
        assert!(analytic_gamma_v(args[0], args[1], args[2], args[3]) >= -1.0 - 1e-15);
    }
}

#[test]
fn extremal_tilt_is_sixty_degrees() {
    // Γ_u(θ) on the optimal phase line, sampled finely
    let (best, arg) = (0..=100_000)
        .map(|k| PI * k as f64 / 100_000.0)
        .map(|t| (analytic_gamma_u(t, 0.3, 0.3 - 1.0, 1.0), t))
        .fold((f64::INFINITY, 0.0), |acc, x| if x.0 < acc.0 { x } else { acc });
    assert!((best + 1.125).abs() < 1e-9);
    assert!((arg - FRAC_PI_3).abs() < 1e-4);
}

#[test]
fn term_sum_is_gamma() {
    let mut r = rng(22);
    for _ in 0..500 {
        let psi = random_state(&mut r);
        let s = CHSettings::new(random_direction(&mut r), random_direction(&mut r), random_direction(&mut r), random_direction(&mut r));
        let g = gamma(&psi, &s);
        assert!((g.gamma - g.terms.combine()).abs() < 1e-12);
        assert!(g.terms.as_array().iter().all(|q| (-1e-15..=1.0 + 1e-12).contains(q)));
        assert!((-2.0..=1.0).contains(&g.gamma));
    }
}

#[test]
fn lhv_hull() {
    let v = lhv_vertices();
    let values: Vec<f64> = v.iter().map(|(_, g)| *g).collect();
    assert_eq!(values.iter().cloned().fold(f64::INFINITY, f64::min), -1.0);
    assert_eq!(values.iter().cloned().fold(f64::NEG_INFINITY, f64::max), 0.0);
    let mut r = rng(23);
    for _ in 0..10_000 {
        let w: [f64; 16] = std::array::from_fn(|_| r.random::<f64>().powi(3));
        let g = mixture_gamma(&w);
        assert!((-1.0..=0.0).contains(&g), "{g}");
    }
}

#[test]
fn coherent_products_never_violate() {
    let mut r = rng(24);
    for _ in 0..500 {
        let psi = TwoAtomState::coherent_product(random_direction(&mut r), random_direction(&mut r));
        let s = CHSettings::new(random_direction(&mut r), random_direction(&mut r), random_direction(&mut r), random_direction(&mut r));
        let g = gamma(&psi, &s).gamma;
        assert!((-1.0 - 1e-9..=1e-9).contains(&g), "{g}");
    }
}

#[test]
fn coherent_product_correlations_factorize() {
    let mut r = rng(25);
    for _ in 0..500 {
        let (n, m) = (random_direction(&mut r), random_direction(&mut r));
        let psi = TwoAtomState::coherent_product(n, m);
        let (n1, n2) = (random_direction(&mut r), random_direction(&mut r));
        let q12 = joint_q(&psi, n1, n2);
        assert!((q12 - marginal_q(&psi, Atom::First, n1) * marginal_q(&psi, Atom::Second, n2)).abs() < 1e-12);
        let law = (1.0 + n.dot(&n1)) / 2.0 * (1.0 + m.dot(&n2)) / 2.0;
        assert!((q12 - law).abs() < 1e-12);
    }
}

#[test]
fn gamma_is_covariant_under_local_rotations() {
    let mut r = rng(26);
    for _ in 0..500 {
        let psi = random_state(&mut r);
        let s = CHSettings::new(random_direction(&mut r), random_direction(&mut r), random_direction(&mut r), random_direction(&mut r));
        let (g1, g2) = (rotation_qubit(random_direction(&mut r)), rotation_qubit(random_direction(&mut r)));
        let moved = psi.apply_local(&g1, &g2);
        let a = gamma(&psi, &s).gamma;
        let b = gamma(&moved, &s.rotated(&g1, &g2)).gamma;
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn canonical_form_reconstructs_random_states() {
    let mut r = rng(27);
    for _ in 0..300 {
        let psi = random_state(&mut r);
        let c = canonical_form(&psi);
        assert!((0.0..=FRAC_PI_4 + 1e-12).contains(&c.vartheta));
        assert!(c.reconstruct().distance_up_to_phase(&psi) < 1e-9);
    }
    for _ in 0..50 {
        let psi = TwoAtomState::coherent_product(random_direction(&mut r), random_direction(&mut r));
        let c = canonical_form(&psi);
        assert!(c.vartheta < 1e-7);
        assert!(c.reconstruct().distance_up_to_phase(&psi) < 1e-9);
    }
}

#[test]
fn pinned_optimum_formula_against_brute_force() {
    // independent check of the closed form used below: dense 4-D grid
    let n = 36;
    for &t in &[0.1, 0.4, FRAC_PI_4] {
        let psi = eta_state(t, 0.0);
        let mut best = f64::NEG_INFINITY;
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..n {
                    for l in 0..n {
                        let s = CHSettings::pinned(
                            BlochDirection::new(PI * i as f64 / n as f64, TAU * k as f64 / n as f64).unwrap(),
                            BlochDirection::new(PI * j as f64 / n as f64, TAU * l as f64 / n as f64).unwrap(),
                        );
                        best = best.max(gamma(&psi, &s).gamma);
                    }
                }
            }
        }
        let formula = pinned_eta_max(t);
        assert!(best <= formula + 1e-12, "grid {best} above formula {formula}");
        assert!(best >= formula - 5e-3, "grid {best} far below formula {formula}");
    }
}

#[test]
fn pinned_optimizer_matches_closed_form() {
    let mut r = rng(28);
    for k in 1..=8 {
        let t = FRAC_PI_4 * k as f64 / 8.0;
        let psi = eta_state(t, r.random_range(0.0..TAU));
        let rep = optimize_gamma(&psi, &OptimizeConfig::new(Objective::Maximize)).unwrap();
        assert!((rep.best.gamma - pinned_eta_max(t)).abs() < 1e-6, "ϑ={t}: {} vs {}", rep.best.gamma, pinned_eta_max(t));
    }
}

#[test]
fn free_optimizer_reaches_projective_optimum() {
    for &t in &[0.05, 0.3, FRAC_PI_4] {
        let psi = eta_state(t, 1.1);
        let cfg = OptimizeConfig::new(Objective::Maximize).with_freedom(SettingsFreedom::Full).with_budget(40_000);
        let rep = optimize_gamma(&psi, &cfg).unwrap();
        assert!((rep.best.gamma - free_eta_max(t)).abs() < 1e-6, "ϑ={t}: {} vs {}", rep.best.gamma, free_eta_max(t));
        let cfg = cfg.with_freedom(SettingsFreedom::Full);
        let rep = optimize_gamma(&psi, &OptimizeConfig { objective: Objective::Minimize, ..cfg }).unwrap();
        assert!((rep.best.gamma + 1.0 + free_eta_max(t)).abs() < 1e-6, "ϑ={t}: {}", rep.best.gamma);
    }
}

#[test]
fn every_entangled_state_violates_somewhere() {
    let mut r = rng(29);
    let mut tested = 0;
    while tested < 40 {
        let psi = random_state(&mut r);
        let t = entanglement_angle(&psi);
        if t < 0.05 {
            continue;
        }
        tested += 1;
        for freedom in [SettingsFreedom::SchmidtFrame, SettingsFreedom::Full] {
            let max = optimize_gamma(&psi, &OptimizeConfig::new(Objective::Maximize).with_freedom(freedom)).unwrap();
            let min = optimize_gamma(&psi, &OptimizeConfig::new(Objective::Minimize).with_freedom(freedom)).unwrap();
            assert!(max.best.gamma > 1e-4 || min.best.gamma < -1.0 - 1e-4, "{freedom:?} ϑ={t}");
        }
        // the Schmidt-frame search reproduces the η value exactly
        let sf = optimize_gamma(&psi, &OptimizeConfig::new(Objective::Maximize).with_freedom(SettingsFreedom::SchmidtFrame)).unwrap();
        assert!((sf.best.gamma - pinned_eta_max(t)).abs() < 1e-6);
    }
}

#[test]
fn free_extrema_are_local_rotation_invariant() {
    let mut r = rng(30);
    for _ in 0..5 {
        let psi = random_state(&mut r);
        let moved = psi.rotate(random_direction(&mut r), random_direction(&mut r));
        let cfg = OptimizeConfig::new(Objective::Maximize).with_freedom(SettingsFreedom::Full);
        let a = optimize_gamma(&psi, &cfg).unwrap().best.gamma;
        let b = optimize_gamma(&moved, &cfg).unwrap().best.gamma;
        assert!((a - b).abs() < 1e-4, "{a} vs {b}");
        let expect = free_eta_max(entanglement_angle(&psi));
        assert!((a - expect).abs() < 1e-4);
    }
}

#[test]
fn products_stay_inside_bound_under_search() {
    let mut r = rng(31);
    for _ in 0..10 {
        let psi = TwoAtomState::coherent_product(random_direction(&mut r), random_direction(&mut r));
        for freedom in [SettingsFreedom::Pinned, SettingsFreedom::Full] {
            for objective in [Objective::Minimize, Objective::Maximize] {
                let cfg = OptimizeConfig { objective, freedom, ..OptimizeConfig::new(objective) };
                let g = optimize_gamma(&psi, &cfg).unwrap().best.gamma;
                assert!((-1.0 - 1e-9..=1e-9).contains(&g), "{g}");
            }
        }
    }
}

#[test]
fn peres_projectors_are_coherent_states() {
    let s3 = 3f64.sqrt() / 2.0;
    let plus = coherent_qubit(BlochDirection::new(FRAC_PI_3, 0.0).unwrap());
    let minus = coherent_qubit(BlochDirection::new(FRAC_PI_3, PI).unwrap());
    let w_plus = Qubit::new(s3.into(), 0.5.into());
    let w_minus = Qubit::new(s3.into(), (-0.5).into());
    assert!((plus.dotc(&w_plus).norm() - 1.0).abs() < 1e-15);
    assert!((minus.dotc(&w_minus).norm() - 1.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn lhv_vertex_gamma_in_bound(k in 0u8..16) {
        let g = LocalStrategy::from_index(k).gamma();
        prop_assert!((-1..=0).contains(&g));
    }
}
