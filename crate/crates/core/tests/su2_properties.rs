mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use atombell_core::su2::*;
use common::*;
use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn wigner_sum_agrees_with_generator_exponential() {
    let thetas = [0.0, 0.2, FRAC_PI_2, 1.9, PI, 4.0];
    for two_j in 0..=5 {
        let spin = Spin::new(two_j).unwrap();
        for &t in &thetas {
            let diff = (wigner_d(spin, t) - wigner_d_by_exponential(two_j, t)).abs().max();
            assert!(diff < 1e-10, "2j={two_j} θ={t}: {diff}");
        }
    }
}

#[test]
fn spin_one_quarter_turn_against_exponential() {
    let diff = (wigner_d(Spin::ONE, FRAC_PI_2) - wigner_d_by_exponential(2, FRAC_PI_2)).abs().max();
    assert!(diff < 1e-10);
}

#[test]
fn wigner_d_is_orthogonal() {
    let mut r = rng(1);
    for _ in 0..100 {
        let spin = Spin::new(r.random_range(0..=5)).unwrap();
        let d = wigner_d(spin, r.random_range(-PI..PI));
        let defect = (d.transpose() * &d - DMatrix::identity(spin.dim(), spin.dim())).abs().max();
        assert!(defect < 1e-12);
    }
}

#[test]
fn rotation_operators_are_unitary() {
    let mut r = rng(2);
    for _ in 0..500 {
        let spin = Spin::new(r.random_range(0..=5)).unwrap();
        let u = rotation_operator(spin, random_direction(&mut r));
        assert!(u.unitarity_defect() < 1e-10);
    }
    let u = rotation_operator(Spin::HALF, BlochDirection::new(1.0, 2.0).unwrap());
    let prod = u.matrix().adjoint() * u.matrix();
    let worst = (prod - DMatrix::<Complex64>::identity(2, 2)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(worst < 1e-12);
}

#[test]
fn first_column_equals_coherent_state_for_random_directions() {
    let mut r = rng(3);
    for _ in 0..200 {
        let spin = Spin::new(r.random_range(0..=5)).unwrap();
        let n = random_direction(&mut r);
        let u = rotation_operator(spin, n);
        let c = coherent_state(spin, n);
        let worst = (0..spin.dim()).map(|k| (u.matrix()[(k, 0)] - c.amps()[k]).norm()).fold(0.0, f64::max);
        assert!(worst < 1e-15);
        assert!((c.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn overlap_law() {
    let mut r = rng(4);
    for _ in 0..500 {
        let spin = Spin::new(r.random_range(0..=5)).unwrap();
        let (n, m) = (random_direction(&mut r), random_direction(&mut r));
        let law = ((1.0 + n.dot(&m)) / 2.0).powi(spin.two_j() as i32);
        assert!((coherent_overlap(spin, n, m).norm_sqr() - law).abs() < 1e-10);
    }
}

#[test]
fn q_function_integrates_to_one() {
    let mut r = rng(5);
    // random mixed spin-1/2 states
    for _ in 0..20 {
        let a = random_amps(&mut r, 2);
        let b = random_amps(&mut r, 2);
        let w: f64 = r.random();
        let qa = Qubit::new(a[0], a[1]).normalize();
        let qb = Qubit::new(b[0], b[1]).normalize();
        let rho = DensityMatrix2::new(qa * qa.adjoint() * Complex64::from(w) + qb * qb.adjoint() * Complex64::from(1.0 - w)).unwrap();
        let total = sphere_integral(8, |n| q_function(&rho, n)) * 2.0 / (4.0 * PI);
        assert!((total - 1.0).abs() < 1e-6, "{total}");
    }
    // and pure states of higher spin
    for two_j in 0..=5 {
        let spin = Spin::new(two_j).unwrap();
        let psi = SpinState::normalized(spin, random_amps(&mut r, spin.dim())).unwrap();
        let total = sphere_integral(8, |n| q_function(&psi, n)) * spin.dim() as f64 / (4.0 * PI);
        assert!((total - 1.0).abs() < 1e-6, "2j={two_j}: {total}");
    }
}

#[test]
fn q_function_of_dense_matrix_matches_pure_state() {
    let mut r = rng(6);
    for two_j in 0..=5 {
        let spin = Spin::new(two_j).unwrap();
        let psi = SpinState::normalized(spin, random_amps(&mut r, spin.dim())).unwrap();
        let rho = psi.amps() * psi.amps().adjoint();
        let n = random_direction(&mut r);
        assert!((q_function_dense(&rho, n).unwrap() - q_function(&psi, n)).abs() < 1e-12);
    }
}

#[test]
fn displacement_then_upper_readout_equals_joint_q() {
    let mut r = rng(7);
    for _ in 0..500 {
        let psi = random_state(&mut r);
        let (n1, n2) = (random_direction(&mut r), random_direction(&mut r));
        let displaced = displace_two_atoms(&psi, n1, n2);
        assert!((displaced.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((displaced.amps()[0].norm_sqr() - joint_q(&psi, n1, n2)).abs() < 1e-12);
    }
}

#[test]
fn marginal_q_sums_displaced_probabilities() {
    let mut r = rng(8);
    for _ in 0..200 {
        let psi = random_state(&mut r);
        let n = random_direction(&mut r);
        let p1 = displace_two_atoms(&psi, n, BlochDirection::ZENITH).amps().map(|a| a.norm_sqr());
        assert!((marginal_q(&psi, Atom::First, n) - (p1[0] + p1[1])).abs() < 1e-12);
        let p2 = displace_two_atoms(&psi, BlochDirection::ZENITH, n).amps().map(|a| a.norm_sqr());
        assert!((marginal_q(&psi, Atom::Second, n) - (p2[0] + p2[2])).abs() < 1e-12);
        // exactly the Q function of the reduced density matrix
        assert_eq!(marginal_q(&psi, Atom::First, n), q_function(&reduced_density(&psi, Atom::First), n));
    }
}

#[test]
fn marginal_at_zenith_sums_undisplaced_outcomes() {
    let mut r = rng(9);
    for _ in 0..100 {
        let psi = random_state(&mut r);
        let z = BlochDirection::ZENITH;
        let p = psi.amps().map(|a| a.norm_sqr());
        assert!((marginal_q(&psi, Atom::First, z) - (p[0] + p[1])).abs() < 1e-12);
        assert!((marginal_q(&psi, Atom::Second, z) - (p[0] + p[2])).abs() < 1e-12);
    }
}

#[test]
fn reduced_densities_are_valid() {
    let mut r = rng(10);
    for _ in 0..200 {
        let psi = random_state(&mut r);
        for atom in [Atom::First, Atom::Second] {
            let rho = reduced_density(&psi, atom);
            assert!(DensityMatrix2::new(*rho.matrix()).is_ok());
        }
    }
}

#[test]
fn observables_ignore_phase_conventions() {
    let mut r = rng(11);
    for _ in 0..100 {
        let psi = random_state(&mut r);
        let phase = Complex64::from_polar(1.0, r.random_range(0.0..6.0));
        let rephased = TwoAtomState::from_amps(psi.amps().map(|a| a * phase)).unwrap();
        let (n1, n2) = (random_direction(&mut r), random_direction(&mut r));
        assert!((joint_q(&psi, n1, n2) - joint_q(&rephased, n1, n2)).abs() < 1e-12);
        // raw azimuth φ + 2π flips the sign of the coherent state; Q cannot see it
        let shifted = BlochDirection::new(n1.theta(), n1.phi() + 2.0 * PI).unwrap();
        let (s, c) = (n1.theta() / 2.0).sin_cos();
        let wound = n1.phi() + 2.0 * PI;
        let flipped = Qubit::new(Complex64::from_polar(c, -wound / 2.0), Complex64::from_polar(s, wound / 2.0));
        assert!((coherent_qubit(n1) + flipped).norm() < 1e-12);
        let p_raw = (flipped.dotc(&psi.amplitude_matrix().column(0).into_owned())).norm_sqr()
            + (flipped.dotc(&psi.amplitude_matrix().column(1).into_owned())).norm_sqr();
        assert!((p_raw - marginal_q(&psi, Atom::First, n1)).abs() < 1e-12);
        assert!((joint_q(&psi, shifted, n2) - joint_q(&psi, n1, n2)).abs() < 1e-12);
    }
}

fn svd_oracle(psi: &TwoAtomState) -> (f64, f64, Qubit) {
    let svd = psi.amplitude_matrix().svd(true, false);
    let (s0, s1) = (svd.singular_values[0], svd.singular_values[1]);
    let u = svd.u.unwrap();
    let (hi, lo, k) = if s0 >= s1 { (s0, s1, 0) } else { (s1, s0, 1) };
    (hi, lo, u.column(k).into_owned())
}

#[test]
fn schmidt_matches_singular_values() {
    let mut r = rng(12);
    for _ in 0..200 {
        let psi = random_state(&mut r);
        let f = schmidt_decompose(&psi);
        let (hi, lo, u0) = svd_oracle(&psi);
        assert!((f.vartheta.cos() - hi).abs() < 1e-10);
        assert!((f.vartheta.sin() - lo).abs() < 1e-10);
        assert!((f.basis1[0].dotc(&u0).norm() - 1.0).abs() < 1e-10);
        assert!(f.reconstruct().distance_up_to_phase(&psi) < 1e-10);
        for b in [f.basis1, f.basis2] {
            assert!(b[0].dotc(&b[1]).norm() < 1e-12);
            assert!((b[0].norm() - 1.0).abs() < 1e-12 && (b[1].norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn schmidt_angle_is_local_invariant() {
    let mut r = rng(13);
    for _ in 0..200 {
        let psi = random_state(&mut r);
        let before = entanglement_angle(&psi);
        let rotated = psi.rotate(random_direction(&mut r), random_direction(&mut r));
        assert!((entanglement_angle(&rotated) - before).abs() < 1e-10);
        // generic unitaries (with an extra phase) too
        let g: Matrix2<Complex64> = rotation_qubit(random_direction(&mut r)) * Matrix2::from_diagonal(&nalgebra::Vector2::new(Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, -1.1)));
        let rotated = psi.apply_local(&g, &rotation_qubit(random_direction(&mut r)));
        assert!((entanglement_angle(&rotated) - before).abs() < 1e-10);
    }
}

#[test]
fn coherent_products_are_not_entangled() {
    let mut r = rng(14);
    for _ in 0..100 {
        let psi = TwoAtomState::coherent_product(random_direction(&mut r), random_direction(&mut r));
        assert!(!is_entangled(&psi));
    }
}

proptest! {
    #[test]
    fn canonical_direction_preserves_unit_vector(theta in -20.0f64..20.0, phi in -50.0f64..50.0) {
        let d = BlochDirection::new(theta, phi).unwrap();
        prop_assert!((0.0..=PI).contains(&d.theta()));
        prop_assert!((0.0..2.0 * PI).contains(&d.phi()));
        let v = d.unit_vector();
        let raw = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        for k in 0..3 {
            prop_assert!((v[k] - raw[k]).abs() < 1e-12);
        }
        prop_assert!(((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn joint_q_is_a_probability(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let psi = random_state(&mut r);
        let (n1, n2) = (random_direction(&mut r), random_direction(&mut r));
        let q = joint_q(&psi, n1, n2);
        prop_assert!((-1e-15..=1.0 + 1e-12).contains(&q));
        prop_assert!(q <= marginal_q(&psi, Atom::First, n1) + 1e-12);
        prop_assert!(q <= marginal_q(&psi, Atom::Second, n2) + 1e-12);
    }
}
