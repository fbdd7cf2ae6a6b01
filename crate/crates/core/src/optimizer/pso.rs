//! Particle swarm core.
//!
//! Mechanics: uniform random initialization in the box, zero initial
//! velocities, per-element velocity update
//! `v ← w·v + c1·rand∘(pbest − x) + c2·rand∘(gbest − x)`,
//! position clamping to the box, and geometric inertia decay per outer
//! iteration. All random draws happen sequentially on one thread; only the
//! fitness evaluations run in parallel, so results depend on the seed alone.

use super::PsoConfig;
use crate::numerics::RandomStream;
use rayon::prelude::*;

/// Outcome of one swarm run.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmResult {
    /// Best position found.
    pub position: Vec<f64>,
    /// Objective value at `position`.
    pub objective: f64,
    /// Outer iterations performed.
    pub iterations_used: usize,
    /// Best objective after initialization and after each iteration;
    /// nonincreasing by construction.
    pub history: Vec<f64>,
}

/// Minimizes `objective` over the axis-aligned box `bounds`.
/// Deterministic for a given `cfg.seed`.
pub fn pso_minimize(
    objective: impl Fn(&[f64]) -> f64 + Sync,
    bounds: &[(f64, f64)],
    cfg: &PsoConfig,
) -> crate::Result<SwarmResult> {
    cfg.validate()?;
    let dim = bounds.len();
    for &(lo, hi) in bounds {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(crate::Error::invalid(format!(
                "pso bounds must be finite with lo < hi (got [{lo}, {hi}])"
            )));
        }
    }

    let n = cfg.n_particles;
    let mut rng = RandomStream::new(cfg.seed);

    let mut positions: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            bounds
                .iter()
                .map(|&(lo, hi)| lo + (hi - lo) * rng.uniform())
                .collect()
        })
        .collect();
    let mut velocities = vec![vec![0.0; dim]; n];

    let eval_all =
        |pos: &[Vec<f64>]| -> Vec<f64> { pos.par_iter().map(|x| objective(x)).collect() };

    let mut fitness = eval_all(&positions);
    let mut pbest = positions.clone();
    let mut pbest_fit = fitness.clone();
    let (mut gbest, mut gbest_fit) = best_of(&positions, &fitness);
    let mut history = Vec::with_capacity(cfg.n_iterations + 1);
    history.push(gbest_fit);

    let mut w = cfg.w;
    for _ in 0..cfg.n_iterations {
        for i in 0..n {
            for k in 0..dim {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                velocities[i][k] = w * velocities[i][k]
                    + cfg.c1 * r1 * (pbest[i][k] - positions[i][k])
                    + cfg.c2 * r2 * (gbest[k] - positions[i][k]);
                positions[i][k] =
                    (positions[i][k] + velocities[i][k]).clamp(bounds[k].0, bounds[k].1);
            }
        }
        fitness = eval_all(&positions);
        for i in 0..n {
            if fitness[i] < pbest_fit[i] {
                pbest_fit[i] = fitness[i];
                pbest[i].clone_from(&positions[i]);
            }
            if fitness[i] < gbest_fit {
                gbest_fit = fitness[i];
                gbest.clone_from(&positions[i]);
            }
        }
        history.push(gbest_fit);
        w *= cfg.w_decay;
    }

    Ok(SwarmResult {
        position: gbest,
        objective: gbest_fit,
        iterations_used: cfg.n_iterations,
        history,
    })
}

fn best_of(positions: &[Vec<f64>], fitness: &[f64]) -> (Vec<f64>, f64) {
    let mut best_idx = 0;
    let mut best = f64::INFINITY;
    for (i, &f) in fitness.iter().enumerate() {
        if f < best {
            best = f;
            best_idx = i;
        }
    }
    (positions[best_idx].clone(), best)
}
