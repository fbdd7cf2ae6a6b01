//! Deterministic grid-search oracle for the allocation problems.
//!
//! Exhaustively evaluates a simplex-respecting grid over
//! `(η₂, η₃, R_S, R_T)` with `η₁ = 1 − η₂ − η₃`, covering both `R_T = R_S`
//! and `R_T > R_S` candidates, then refines locally around the best feasible
//! point with a shrinking box. No randomness; increasing the resolution on a
//! nested grid never worsens the result.

use super::{OptProblem, OptResult, ProblemKind};
use crate::analytic::throughput;
use crate::channel::SystemParams;
use crate::{Error, Result};

const ETA_MIN: f64 = 1e-3;
const REFINE_PASSES: usize = 6;

struct Candidate {
    x: [f64; 5],
    objective: f64,
}

/// Offers `x` to the incumbent if it is feasible and improves the
/// minimization-orientation objective.
fn offer(prob: &OptProblem, x: [f64; 5], best: &mut Option<Candidate>) {
    let p = match SystemParams::raw(
        prob.gamma_p,
        [x[0], x[1], x[2]],
        x[3],
        x[4],
        prob.omega_sr,
        prob.omega_rd,
    ) {
        Ok(p) => p,
        Err(_) => return,
    };
    if !(throughput(&p) > prob.gamma_min && x[4] >= x[3]) {
        return;
    }
    let value = match prob.metric_value(&p) {
        Ok(v) => v,
        Err(_) => return,
    };
    let objective = match prob.kind {
        ProblemKind::MaxAfe => -value,
        _ => value,
    };
    if best.as_ref().is_none_or(|b| objective < b.objective) {
        *best = Some(Candidate { x, objective });
    }
}

/// Best feasible point on the grid, locally refined.
pub fn grid_search_oracle(prob: &OptProblem, resolution: usize) -> Result<OptResult> {
    prob.validate()?;
    if resolution < 5 {
        return Err(Error::invalid(format!(
            "grid resolution must be >= 5 (got {resolution})"
        )));
    }

    let rs_max = super::search_bounds(prob)?[3].1;
    let mut best: Option<Candidate> = None;

    // Coarse pass over the reduced space.
    for i in 1..=resolution {
        let eta2 = i as f64 / (resolution + 1) as f64;
        for j in 1..=resolution {
            let eta3 = j as f64 / (resolution + 1) as f64;
            let eta1 = 1.0 - eta2 - eta3;
            if eta1 < ETA_MIN {
                continue;
            }
            for k in 1..=resolution {
                // Same interior spacing as the η axes so grids at
                // resolution 2r+1 are supersets of those at resolution r.
                let rs = k as f64 / (resolution + 1) as f64 * rs_max;
                offer(prob, [eta1, eta2, eta3, rs, rs], &mut best);
                for m in 1..=3 {
                    let rt = rs + m as f64 / 3.0 * (rs_max - rs);
                    offer(prob, [eta1, eta2, eta3, rs, rt], &mut best);
                }
            }
        }
    }

    if best.is_none() {
        return Err(Error::Infeasible(format!(
            "no feasible grid point for floor {}",
            prob.gamma_min
        )));
    }
    let mut history = vec![best.as_ref().unwrap().objective];

    // Local refinement with a shrinking box around the incumbent.
    let mut span_eta = 1.0 / (resolution + 1) as f64;
    let mut span_rs = rs_max / resolution as f64;
    for _ in 0..REFINE_PASSES {
        let center = best.as_ref().unwrap().x;
        for di in -4i32..=4 {
            let eta2 = center[1] + f64::from(di) / 4.0 * span_eta;
            for dj in -4i32..=4 {
                let eta3 = center[2] + f64::from(dj) / 4.0 * span_eta;
                let eta1 = 1.0 - eta2 - eta3;
                if eta2 < ETA_MIN || eta3 < ETA_MIN || eta1 < ETA_MIN {
                    continue;
                }
                for dk in -4i32..=4 {
                    let rs = center[3] + f64::from(dk) / 4.0 * span_rs;
                    if rs < 1e-4 || rs > rs_max {
                        continue;
                    }
                    offer(prob, [eta1, eta2, eta3, rs, rs], &mut best);
                }
            }
        }
        history.push(best.as_ref().unwrap().objective);
        span_eta *= 0.5;
        span_rs *= 0.5;
    }

    let incumbent = best.unwrap();
    let x = incumbent.x;
    let objective = match prob.kind {
        ProblemKind::MaxAfe => -incumbent.objective,
        _ => incumbent.objective,
    };
    Ok(OptResult {
        eta1: x[0],
        eta2: x[1],
        eta3: x[2],
        rs: x[3],
        rt: x[4],
        objective,
        feasible: true,
        iterations_used: 1 + REFINE_PASSES,
        history,
    })
}
