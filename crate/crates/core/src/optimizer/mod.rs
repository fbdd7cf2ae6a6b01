//! Constrained power/rate allocation by particle swarm optimization.
//!
//! Three problems over the decision vector `(η₁, η₂, η₃, R_S, R_T)`, each
//! subject to a confidential-throughput floor `𝒯 > Γ`, the simplex
//! constraint on η, and the rate ordering `R_T ≥ R_S`:
//!
//! - minimize GSOP at a given θ,
//! - maximize AFE,
//! - minimize AILR.
//!
//! Constraints are handled by a multiplicative penalty: starting from 1, the
//! penalty is multiplied by `penalty_value` per violated constraint and
//! added to the objective when at least one violation occurred (a feasible
//! point's objective is reported unshifted). A deterministic grid-search
//! oracle over the reduced simplex space validates the swarm results.
//!
//! The swarm explores raw 5-vectors whose η part is almost never exactly on
//! the simplex; the η-sum violation is penalized as a tier, while the base
//! objective and the throughput constraint are evaluated at the
//! simplex-normalized image of the point. Ranking between particles then
//! agrees with the projected solution that [`solve`] ultimately returns, so
//! the exact final projection cannot silently break feasibility.

mod oracle;
mod pso;

pub use oracle::grid_search_oracle;
pub use pso::{pso_minimize, SwarmResult};

use crate::analytic::{
    afe, afe_asymptotic, ailr, ailr_asymptotic, gsop, gsop_asymptotic, throughput,
    throughput_envelope,
};
use crate::channel::SystemParams;
use crate::numerics::QuadratureSpec;
use crate::{Error, Result};

/// Tolerance on the η-sum constraint inside the penalty check. The final
/// answer is projected exactly, so this only gates the penalty tier.
const ETA_SUM_PENALTY_TOL: f64 = 1e-6;

/// Swarm hyperparameters.
#[derive(Debug, Clone, Copy)]
pub struct PsoConfig {
    pub n_particles: usize,
    pub n_iterations: usize,
    /// Personal-best attraction weight.
    pub c1: f64,
    /// Global-best attraction weight.
    pub c2: f64,
    /// Initial inertia weight.
    pub w: f64,
    /// Multiplicative inertia decay per iteration.
    pub w_decay: f64,
    pub seed: u64,
    /// Per-violation penalty factor.
    pub penalty_value: f64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            n_particles: 2000,
            n_iterations: 100,
            c1: 0.3,
            c2: 0.3,
            w: 0.3,
            w_decay: 0.7,
            seed: 1,
            penalty_value: 1e3,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_particles < 1 {
            return Err(Error::invalid(format!(
                "n_particles must be >= 1 (got {})",
                self.n_particles
            )));
        }
        if self.n_iterations < 1 {
            return Err(Error::invalid("n_iterations must be >= 1".to_string()));
        }
        if self.c1 < 0.0 || self.c2 < 0.0 || self.w < 0.0 {
            return Err(Error::invalid("c1, c2, w must be nonnegative".to_string()));
        }
        if !(self.w_decay > 0.0 && self.w_decay <= 1.0) {
            return Err(Error::invalid(format!(
                "w_decay must lie in (0, 1] (got {})",
                self.w_decay
            )));
        }
        if !(self.penalty_value > 0.0) {
            return Err(Error::invalid("penalty_value must be > 0".to_string()));
        }
        Ok(())
    }
}

/// Which metric is optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// Minimize the generalized secrecy outage probability at `theta`.
    MinGsop,
    /// Maximize the average fractional equivocation.
    MaxAfe,
    /// Minimize the average information leakage rate.
    MinAilr,
}

/// Whether the objective uses the high-SNR asymptotic forms (fast, the
/// default) or the full closed forms with quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveMode {
    Asymptotic,
    Full,
}

/// One constrained allocation problem.
#[derive(Debug, Clone, Copy)]
pub struct OptProblem {
    pub kind: ProblemKind,
    /// Throughput floor Γ; feasible iff `0 < Γ < T_max` envelope.
    pub gamma_min: f64,
    /// Equivocation threshold for [`ProblemKind::MinGsop`].
    pub theta: f64,
    pub gamma_p: f64,
    pub omega_sr: f64,
    pub omega_rd: f64,
    pub objective_mode: ObjectiveMode,
}

impl OptProblem {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma_min > 0.0) {
            return Err(Error::invalid(format!(
                "gamma_min must be > 0 (got {})",
                self.gamma_min
            )));
        }
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return Err(Error::invalid(format!(
                "theta must lie in (0, 1] (got {})",
                self.theta
            )));
        }
        if !(self.gamma_p > 0.0 && self.omega_sr > 0.0 && self.omega_rd > 0.0) {
            return Err(Error::invalid(
                "gamma_p, omega_sr, omega_rd must be positive".to_string(),
            ));
        }
        Ok(())
    }

    /// Parameters at the simplex-normalized image of a search point.
    fn params_at_projected(&self, x: &[f64; 5]) -> SystemParams {
        let sum = x[0] + x[1] + x[2];
        SystemParams::raw(
            self.gamma_p,
            [x[0] / sum, x[1] / sum, x[2] / sum],
            x[3],
            x[4],
            self.omega_sr,
            self.omega_rd,
        )
        .expect("box-bounded search points are positive")
    }

    /// Natural-orientation metric value at a feasible point (GSOP / AFE /
    /// AILR depending on `kind`).
    pub fn metric_value(&self, p: &SystemParams) -> Result<f64> {
        let quad = QuadratureSpec::default();
        Ok(match (self.kind, self.objective_mode) {
            (ProblemKind::MinGsop, ObjectiveMode::Asymptotic) => gsop_asymptotic(p, self.theta)?,
            (ProblemKind::MinGsop, ObjectiveMode::Full) => gsop(p, self.theta)?,
            (ProblemKind::MaxAfe, ObjectiveMode::Asymptotic) => afe_asymptotic(p),
            (ProblemKind::MaxAfe, ObjectiveMode::Full) => afe(p, &quad)?,
            (ProblemKind::MinAilr, ObjectiveMode::Asymptotic) => ailr_asymptotic(p),
            (ProblemKind::MinAilr, ObjectiveMode::Full) => ailr(p, &quad)?,
        })
    }

    /// Minimization-orientation objective (AFE negated).
    fn base_objective(&self, p: &SystemParams) -> f64 {
        let v = self.metric_value(p).unwrap_or(f64::INFINITY);
        match self.kind {
            ProblemKind::MaxAfe => -v,
            _ => v,
        }
    }
}

/// Solution of one allocation problem.
#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    pub eta1: f64,
    pub eta2: f64,
    pub eta3: f64,
    pub rs: f64,
    pub rt: f64,
    /// Metric value in natural orientation (GSOP, AFE, or AILR).
    pub objective: f64,
    pub feasible: bool,
    pub iterations_used: usize,
    /// Best (penalized, minimization-orientation) objective per iteration.
    pub history: Vec<f64>,
}

/// Penalized minimization objective at a raw search point.
///
/// Violations checked: `𝒯 ≤ Γ` (full-form throughput), `|Ση − 1| > 1e-6`,
/// and `R_T < R_S`. The penalty starts at 1, is multiplied by
/// `penalty_value` per violation, and is added only when a violation
/// occurred, so feasible points report the unshifted objective.
///
/// The base objective and the throughput constraint are evaluated at the
/// simplex-normalized η (see the module docs); the η-sum and rate-order
/// checks look at the raw point.
pub fn penalized_objective(x: &[f64; 5], prob: &OptProblem, penalty_value: f64) -> f64 {
    let p = prob.params_at_projected(x);
    let mut objective = prob.base_objective(&p);

    let mut penalty = 1.0;
    let mut violated = false;
    if throughput(&p) <= prob.gamma_min {
        penalty *= penalty_value;
        violated = true;
    }
    if (x[0] + x[1] + x[2] - 1.0).abs() > ETA_SUM_PENALTY_TOL {
        penalty *= penalty_value;
        violated = true;
    }
    if x[4] < x[3] {
        penalty *= penalty_value;
        violated = true;
    }
    if violated {
        objective += penalty;
    }
    objective
}

/// Box bounds for the swarm: η components in `[1e-3, 1 − 2e-3]`, rates in
/// `(0, rs_max]` with `rs_max` twice the envelope-optimal secrecy rate.
fn search_bounds(prob: &OptProblem) -> Result<[(f64, f64); 5]> {
    let partial = SystemParams::raw(
        prob.gamma_p,
        [1.0 / 3.0; 3],
        1.0,
        1.0,
        prob.omega_sr,
        prob.omega_rd,
    )?;
    let mut rs_t_max: f64 = 0.0;
    for i in 1..=19 {
        let m = crate::analytic::max_throughput(i as f64 * 0.05, &partial)?;
        rs_t_max = rs_t_max.max(m.rs_opt);
    }
    let rs_max = 2.0 * rs_t_max;
    let eta = (1e-3, 1.0 - 2e-3);
    Ok([eta, eta, eta, (1e-3, rs_max), (1e-3, rs_max)])
}

/// Solves one allocation problem with the swarm, then projects the η part
/// of the best point onto the simplex (exact renormalization) and re-checks
/// feasibility with the full-form throughput.
pub fn solve(prob: &OptProblem, cfg: &PsoConfig) -> Result<OptResult> {
    solve_pinned(prob, cfg, None, None)
}

/// [`solve`] with optional components of the decision vector pinned:
/// a fixed power split and/or a fixed secrecy rate. Pinned coordinates are
/// excluded from the swarm's search space. Used for sweeps that vary one
/// quantity while optimizing the rest (e.g. outage versus secrecy rate
/// under a throughput floor).
pub fn solve_pinned(
    prob: &OptProblem,
    cfg: &PsoConfig,
    pin_etas: Option<[f64; 3]>,
    pin_rs: Option<f64>,
) -> Result<OptResult> {
    prob.validate()?;
    cfg.validate()?;

    let partial = SystemParams::raw(
        prob.gamma_p,
        [1.0 / 3.0; 3],
        1.0,
        1.0,
        prob.omega_sr,
        prob.omega_rd,
    )?;
    let envelope = throughput_envelope(&partial)?;
    if prob.gamma_min >= envelope.t_max {
        return Err(Error::Infeasible(format!(
            "throughput floor {} is not below the achievable maximum {:.6}",
            prob.gamma_min, envelope.t_max
        )));
    }
    if let Some(etas) = pin_etas {
        let sum: f64 = etas.iter().sum();
        if etas.iter().any(|&e| e <= 0.0) || (sum - 1.0).abs() > 1e-6 {
            return Err(Error::invalid(format!(
                "pinned eta must be a positive simplex point (got {etas:?})"
            )));
        }
        // With the split pinned, the achievable maximum shrinks to the
        // stationary rate of that split.
        let c = (etas[0] * prob.omega_sr + prob.omega_rd * (etas[1] + etas[2]))
            / (prob.gamma_p * etas[0] * etas[1] * prob.omega_rd * prob.omega_sr);
        let rs_star = crate::numerics::lambert_w0(1.0 / c)? / (4.0f64).ln();
        let p_star = SystemParams::raw(
            prob.gamma_p,
            etas,
            rs_star,
            rs_star,
            prob.omega_sr,
            prob.omega_rd,
        )?;
        if prob.gamma_min >= throughput(&p_star) {
            return Err(Error::Infeasible(format!(
                "throughput floor {} exceeds the maximum {:.6} at the pinned power split",
                prob.gamma_min,
                throughput(&p_star)
            )));
        }
    }

    let full_bounds = search_bounds(prob)?;
    // Free coordinates of the 5-vector, in order.
    let free: Vec<usize> = (0..5)
        .filter(|&k| match k {
            0..=2 => pin_etas.is_none(),
            3 => pin_rs.is_none(),
            _ => true,
        })
        .collect();
    let bounds: Vec<(f64, f64)> = free.iter().map(|&k| full_bounds[k]).collect();

    let assemble = |reduced: &[f64]| -> [f64; 5] {
        let mut x = [0.0; 5];
        if let Some(etas) = pin_etas {
            x[..3].copy_from_slice(&etas);
        }
        if let Some(rs) = pin_rs {
            x[3] = rs;
        }
        for (slot, &value) in free.iter().zip(reduced) {
            x[*slot] = value;
        }
        x
    };

    let run = pso_minimize(
        |reduced| penalized_objective(&assemble(reduced), prob, cfg.penalty_value),
        &bounds,
        cfg,
    )?;

    let x = assemble(&run.position);
    let sum: f64 = x[..3].iter().sum();
    let projected = SystemParams::raw(
        prob.gamma_p,
        [x[0] / sum, x[1] / sum, x[2] / sum],
        x[3],
        x[4],
        prob.omega_sr,
        prob.omega_rd,
    )?;
    let feasible = throughput(&projected) > prob.gamma_min && projected.rt >= projected.rs;
    let objective = prob.metric_value(&projected)?;

    Ok(OptResult {
        eta1: projected.eta1,
        eta2: projected.eta2,
        eta3: projected.eta3,
        rs: projected.rs,
        rt: projected.rt,
        objective,
        feasible,
        iterations_used: run.iterations_used,
        history: run.history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opa1(theta: f64) -> OptProblem {
        OptProblem {
            kind: ProblemKind::MinGsop,
            gamma_min: 0.5,
            theta,
            gamma_p: 1000.0,
            omega_sr: 16.0,
            omega_rd: 16.0,
            objective_mode: ObjectiveMode::Asymptotic,
        }
    }

    fn feasible_x() -> [f64; 5] {
        // T(EPA, rs=rt=1) ≈ 0.9983 > Γ = 0.5.
        [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0]
    }

    #[test]
    fn penalty_tiers() {
        let prob = opa1(1.0);
        let pv = 1e3;

        // Feasible point: penalty contribution is zero.
        let x = feasible_x();
        let p = prob.params_at_projected(&x);
        assert!(throughput(&p) > prob.gamma_min);
        let pure = prob.base_objective(&p);
        assert_eq!(penalized_objective(&x, &prob, pv), pure);

        // Rate order violated only: + penalty_value.
        let x = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0, 0.9];
        let p = prob.params_at_projected(&x);
        assert!(throughput(&p) > prob.gamma_min);
        let base = prob.base_objective(&p);
        assert_eq!(penalized_objective(&x, &prob, pv), base + pv);

        // Throughput and sum violated: + penalty_value².
        let x = [0.05, 0.05, 0.05, 0.3, 6.5];
        let p = prob.params_at_projected(&x);
        assert!(throughput(&p) <= prob.gamma_min);
        let base = prob.base_objective(&p);
        assert_eq!(penalized_objective(&x, &prob, pv), base + pv * pv);
    }

    #[test]
    fn zero_penalty_iff_all_constraints_hold() {
        let prob = opa1(1.0);
        let pv = 1e3;
        let cases: [([f64; 5], bool); 4] = [
            (feasible_x(), true),
            ([0.4, 0.4, 0.4, 1.0, 1.0], false), // sum
            ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0, 0.9], false), // order
            ([0.2, 0.2, 0.6, 4.9, 6.5], false), // throughput
        ];
        for (x, feasible) in cases {
            let p = prob.params_at_projected(&x);
            let base = prob.base_objective(&p);
            let shifted = penalized_objective(&x, &prob, pv) != base;
            assert_eq!(shifted, !feasible, "at {x:?}");
        }
    }

    #[test]
    fn solve_produces_feasible_result_beating_epa() {
        let prob = opa1(1.0);
        let cfg = PsoConfig {
            seed: 7,
            ..PsoConfig::default()
        };
        let r = solve(&prob, &cfg).unwrap();
        assert!(r.feasible);
        assert!((r.eta1 + r.eta2 + r.eta3 - 1.0).abs() <= 1e-6);
        assert!(r.rt >= r.rs && r.rs > 0.0);
        let p = SystemParams::raw(
            prob.gamma_p,
            [r.eta1, r.eta2, r.eta3],
            r.rs,
            r.rt,
            16.0,
            16.0,
        )
        .unwrap();
        assert!(throughput(&p) > prob.gamma_min);

        // Must beat equal power allocation at the optimizer-chosen rate.
        let epa = SystemParams::raw(prob.gamma_p, [1.0 / 3.0; 3], r.rs, r.rs, 16.0, 16.0).unwrap();
        let epa_obj = gsop_asymptotic(&epa, prob.theta).unwrap();
        assert!(
            r.objective <= epa_obj,
            "opa {} vs epa {epa_obj}",
            r.objective
        );

        for w in r.history.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn solve_is_deterministic() {
        let prob = opa1(0.5);
        let cfg = PsoConfig {
            n_particles: 200,
            n_iterations: 30,
            seed: 42,
            ..PsoConfig::default()
        };
        let a = solve(&prob, &cfg).unwrap();
        let b = solve(&prob, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn infeasible_floor_is_an_error() {
        let mut prob = opa1(1.0);
        prob.gamma_min = 10.0; // envelope at 30 dB, d = 0.5 is ≈ 3.9
        let err = solve(&prob, &PsoConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)), "{err}");
    }

    #[test]
    fn high_penalty_yields_feasible_solutions_across_seeds() {
        // penalty_value → ∞ proxy: all returned solutions feasible.
        let prob = opa1(1.0);
        let mut feasible = 0;
        let runs = 100;
        for seed in 0..runs {
            let cfg = PsoConfig {
                n_particles: 150,
                n_iterations: 40,
                seed,
                penalty_value: 1e9,
                ..PsoConfig::default()
            };
            if solve(&prob, &cfg).unwrap().feasible {
                feasible += 1;
            }
        }
        assert!(feasible >= 99, "only {feasible}/{runs} feasible");
    }

    #[test]
    fn pinned_coordinates_are_respected() {
        let prob = opa1(1.0);
        let cfg = PsoConfig {
            n_particles: 200,
            n_iterations: 30,
            seed: 13,
            ..PsoConfig::default()
        };
        let epa = [1.0 / 3.0; 3];
        let r = solve_pinned(&prob, &cfg, Some(epa), None).unwrap();
        assert!((r.eta1 - epa[0]).abs() < 1e-12);
        assert!((r.eta2 - epa[1]).abs() < 1e-12);
        assert!((r.eta3 - epa[2]).abs() < 1e-12);
        assert!(r.feasible);

        let r = solve_pinned(&prob, &cfg, None, Some(0.75)).unwrap();
        assert_eq!(r.rs, 0.75);
        assert!(r.rt >= r.rs);
        assert!(r.feasible);

        // Floor above what the pinned split can reach (starved η₁η₂ makes
        // the legitimate link's success probability collapse).
        let err = solve_pinned(&prob, &cfg, Some([0.001, 0.001, 0.998]), None).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)), "{err}");
    }

    #[test]
    fn opa2_and_opa3_orientations() {
        let cfg = PsoConfig {
            n_particles: 300,
            n_iterations: 40,
            seed: 11,
            ..PsoConfig::default()
        };
        let mut prob = opa1(1.0);
        prob.kind = ProblemKind::MaxAfe;
        let r2 = solve(&prob, &cfg).unwrap();
        assert!(r2.feasible);
        // AFE is reported in natural orientation.
        assert!((0.0..=1.0).contains(&r2.objective), "afe {}", r2.objective);

        prob.kind = ProblemKind::MinAilr;
        let r3 = solve(&prob, &cfg).unwrap();
        assert!(r3.feasible);
        assert!(r3.objective >= 0.0);
    }
}
