//! Bounded-evaluation Nelder-Mead minimizer.

pub(crate) struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: u64,
}

pub(crate) struct NelderMead {
    /// Initial simplex edge length.
    pub step: f64,
    /// Converged once the spread of simplex values drops below this.
    pub ftol: f64,
    pub max_evals: u64,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

impl NelderMead {
    /// Minimizes `f` from `x0`, restarting from the incumbent with a smaller
    /// simplex until a restart stops paying off or the budget runs out.
    pub fn minimize<F: Fn(&[f64]) -> f64>(&self, f: F, x0: &[f64]) -> Minimum {
        let mut evals = 0u64;
        let mut best_x = x0.to_vec();
        let mut best_f = f(&best_x);
        evals += 1;
        let mut step = self.step;
        for _ in 0..6 {
            if evals >= self.max_evals {
                break;
            }
            let (x, fx, used) = self.run(&f, &best_x, best_f, step, self.max_evals - evals);
            evals += used;
            let gain = best_f - fx;
            if fx < best_f {
                best_x = x;
                best_f = fx;
            }
            if gain <= self.ftol {
                break;
            }
            step *= 0.25;
        }
        Minimum { x: best_x, f: best_f, evals }
    }

    fn run<F: Fn(&[f64]) -> f64>(&self, f: &F, x0: &[f64], f0: f64, step: f64, budget: u64) -> (Vec<f64>, f64, u64) {
        let d = x0.len();
        let mut evals = 0u64;
        let eval = |x: &[f64], evals: &mut u64| {
            *evals += 1;
            f(x)
        };
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
        simplex.push((x0.to_vec(), f0));
        for k in 0..d {
            if evals >= budget {
                return (x0.to_vec(), f0, evals);
            }
            let mut x = x0.to_vec();
            x[k] += step;
            let fx = eval(&x, &mut evals);
            simplex.push((x, fx));
        }
        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread = simplex[d].1 - simplex[0].1;
            if spread <= self.ftol || evals + 2 > budget {
                break;
            }
            let mut centroid = vec![0.0; d];
            for (x, _) in &simplex[..d] {
                for k in 0..d {
                    centroid[k] += x[k] / d as f64;
                }
            }
            let worst = simplex[d].clone();
            let along = |t: f64| -> Vec<f64> { (0..d).map(|k| centroid[k] + t * (worst.0[k] - centroid[k])).collect() };

            let xr = along(-REFLECT);
            let fr = eval(&xr, &mut evals);
            if fr < simplex[0].1 {
                let xe = along(-EXPAND);
                let fe = eval(&xe, &mut evals);
                simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[d - 1].1 {
                simplex[d] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst.1 {
                let x = along(-CONTRACT);
                let fx = eval(&x, &mut evals);
                (x, fx)
            } else {
                let x = along(CONTRACT);
                let fx = eval(&x, &mut evals);
                (x, fx)
            };
            if fc < worst.1.min(fr) {
                simplex[d] = (xc, fc);
                continue;
            }
            if evals + d as u64 > budget {
                break;
            }
            let best = simplex[0].0.clone();
            for (x, fx) in simplex.iter_mut().skip(1) {
                for k in 0..d {
                    x[k] = best[k] + SHRINK * (x[k] - best[k]);
                }
                *fx = eval(x, &mut evals);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, fx) = simplex.swap_remove(0);
        (x, fx, evals)
    }
}
