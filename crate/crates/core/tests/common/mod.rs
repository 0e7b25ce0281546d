//! Random inputs and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use atombell_core::su2::{BlochDirection, TwoAtomState};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the sphere.
pub fn random_direction(rng: &mut impl Rng) -> BlochDirection {
    let theta = (1.0 - 2.0 * rng.random::<f64>()).acos();
    BlochDirection::new(theta, TAU * rng.random::<f64>()).unwrap()
}

/// Arbitrary raw angles, including values outside the canonical ranges.
pub fn random_angles(rng: &mut impl Rng) -> (f64, f64) {
    (rng.random_range(-2.0 * PI..3.0 * PI), rng.random_range(-4.0 * PI..4.0 * PI))
}

pub fn random_amps(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

pub fn random_state(rng: &mut impl Rng) -> TwoAtomState {
    let a = random_amps(rng, 4);
    TwoAtomState::normalized([a[0], a[1], a[2], a[3]]).unwrap()
}

/// `e^{−iθJ_y}` for spin `two_j/2` by scaling-and-squaring of the Taylor
/// series of the (real) generator. Independent of the Wigner sum.
pub fn wigner_d_by_exponential(two_j: u32, theta: f64) -> DMatrix<f64> {
    let n = two_j as usize + 1;
    let j = two_j as f64 / 2.0;
    // J₊ raises m: index k (m = j − k) → k − 1
    let mut jp = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let m = j - k as f64;
        jp[(k - 1, k)] = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
    }
    // −iθJ_y = −(θ/2)(J₊ − J₋)
    let generator = (&jp - jp.transpose()) * (-theta / 2.0);
    let squarings = 10;
    let scaled = generator / f64::from(1 << squarings);
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = DMatrix::<f64>::identity(n, n);
    for k in 1..30 {
        term = &term * &scaled / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Gauss-Legendre nodes and weights on `[−1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// `∫ f dΩ` over the unit sphere, exact for band-limited integrands of degree
/// below `2 * nodes`.
pub fn sphere_integral(nodes: usize, f: impl Fn(BlochDirection) -> f64) -> f64 {
    let gl = gauss_legendre(nodes);
    let n_phi = 2 * nodes;
    let mut total = 0.0;
    for &(x, w) in &gl {
        for k in 0..n_phi {
            let d = BlochDirection::new(x.acos(), TAU * k as f64 / n_phi as f64).unwrap();
            total += w * (TAU / n_phi as f64) * f(d);
        }
    }
    total
}
