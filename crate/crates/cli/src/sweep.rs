//! Parameter sweeps: one axis, optional per-point optimization, optional
//! Monte Carlo columns, deterministic parallel execution.

use crate::rows::DataRow;
use anyhow::bail;
use clap::ValueEnum;
use rayon::prelude::*;
use relay_secrecy::analytic::{
    afe, afe_asymptotic, ailr, ailr_asymptotic, gsop, gsop_asymptotic, throughput,
};
use relay_secrecy::channel::SystemParams;
use relay_secrecy::montecarlo::{simulate, McConfig};
use relay_secrecy::numerics::QuadratureSpec;
use relay_secrecy::optimizer::{solve_pinned, ObjectiveMode, OptProblem, ProblemKind, PsoConfig};
use relay_secrecy::{db_to_linear, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    GammaPDb,
    Rs,
    D,
    GammaMin,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::GammaPDb => "gamma_p_db",
            Axis::Rs => "rs",
            Axis::D => "d",
            Axis::GammaMin => "gamma_min",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Allocation {
    Epa,
    Opa1,
    Opa2,
    Opa3,
    Fixed,
}

impl Allocation {
    pub fn name(self) -> &'static str {
        match self {
            Allocation::Epa => "epa",
            Allocation::Opa1 => "opa1",
            Allocation::Opa2 => "opa2",
            Allocation::Opa3 => "opa3",
            Allocation::Fixed => "fixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Gsop,
    Afe,
    Ailr,
    Throughput,
}

/// Fixed parameters a sweep starts from.
#[derive(Debug, Clone)]
pub struct BasePoint {
    pub gamma_p_db: f64,
    pub etas: [f64; 3],
    pub rs: f64,
    /// None tracks rs.
    pub rt: Option<f64>,
    pub d: Option<f64>,
    pub alpha: f64,
    pub omegas: Option<(f64, f64)>,
}

/// Axis definition plus everything needed to evaluate each point.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<f64>,
    pub base: BasePoint,
    pub metrics: Vec<Metric>,
    pub theta_list: Vec<f64>,
    pub allocation: Allocation,
    pub mc_samples: Option<u64>,
    pub gamma_min: f64,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.values.is_empty() {
            bail!(Error::InvalidInput(
                "sweep values list is empty".to_string()
            ));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            bail!(Error::InvalidInput(
                "sweep values must be strictly increasing".to_string()
            ));
        }
        if self.theta_list.is_empty() {
            bail!(Error::InvalidInput("theta list is empty".to_string()));
        }
        if self.metrics.is_empty() {
            bail!(Error::InvalidInput("metrics list is empty".to_string()));
        }
        Ok(())
    }

    fn wants(&self, m: Metric) -> bool {
        self.metrics.contains(&m)
    }

    /// Concrete (non-optimized) operating point at one axis value.
    fn point_params(&self, value: f64) -> anyhow::Result<SystemParams> {
        let b = &self.base;
        let mut gamma_p_db = b.gamma_p_db;
        let mut rs = b.rs;
        let mut d = b.d;
        match self.axis {
            Axis::GammaPDb => gamma_p_db = value,
            Axis::Rs => rs = value,
            Axis::D => d = Some(value),
            Axis::GammaMin => {}
        }
        let rt = b.rt.unwrap_or(rs).max(rs);
        let p = match b.omegas {
            Some((osr, ord)) => {
                SystemParams::new(db_to_linear(gamma_p_db), b.etas, rs, rt, osr, ord)?
            }
            None => SystemParams::with_distance(
                db_to_linear(gamma_p_db),
                b.etas,
                rs,
                rt,
                d.unwrap_or(0.5),
                self.base.alpha,
            )?,
        };
        Ok(p)
    }

    /// Throughput floor in force at one axis value.
    fn floor_at(&self, value: f64) -> f64 {
        match self.axis {
            Axis::GammaMin => value,
            _ => self.gamma_min,
        }
    }

    fn optimizes(&self) -> bool {
        !matches!(self.allocation, Allocation::Epa | Allocation::Fixed)
            || self.axis == Axis::GammaMin
    }

    /// Problem kind for the per-point optimization.
    fn kind_for_rows(&self) -> ProblemKind {
        match self.allocation {
            Allocation::Opa1 => ProblemKind::MinGsop,
            Allocation::Opa2 => ProblemKind::MaxAfe,
            Allocation::Opa3 => ProblemKind::MinAilr,
            // Pinned-split optimization over the rates only: target the
            // first requested metric.
            Allocation::Epa | Allocation::Fixed => {
                if self.wants(Metric::Gsop) {
                    ProblemKind::MinGsop
                } else if self.wants(Metric::Ailr) {
                    ProblemKind::MinAilr
                } else {
                    ProblemKind::MaxAfe
                }
            }
        }
    }
}

/// Evaluates the metric columns of one concrete operating point.
fn fill_metrics(
    row: &mut DataRow,
    p: &SystemParams,
    theta: f64,
    spec: &SweepSpec,
) -> anyhow::Result<()> {
    let quad = QuadratureSpec::default();
    if spec.wants(Metric::Gsop) {
        row.gsop = Some(gsop(p, theta)?);
        row.gsop_asym = Some(gsop_asymptotic(p, theta)?);
    }
    if spec.wants(Metric::Afe) {
        row.afe = Some(afe(p, &quad)?);
        row.afe_asym = Some(afe_asymptotic(p));
    }
    if spec.wants(Metric::Ailr) {
        row.ailr = Some(ailr(p, &quad)?);
        row.ailr_asym = Some(ailr_asymptotic(p));
    }
    if spec.wants(Metric::Throughput) {
        row.throughput = Some(throughput(p));
    }
    Ok(())
}

fn fill_mc(
    row: &mut DataRow,
    p: &SystemParams,
    theta: f64,
    n: u64,
    seed: u64,
) -> anyhow::Result<()> {
    let report = simulate(
        p,
        &McConfig {
            n_samples: n,
            seed,
            theta_grid: vec![theta],
        },
    )?;
    let (_, g) = report.gsop_hat[0];
    row.mc_gsop = Some(g.value);
    row.mc_gsop_ci = Some(g.ci_half_width);
    row.mc_afe = Some(report.afe_hat.value);
    row.mc_afe_ci = Some(report.afe_hat.ci_half_width);
    row.mc_ailr = Some(report.ailr_hat.value);
    row.mc_ailr_ci = Some(report.ailr_hat.ci_half_width);
    row.mc_throughput = Some(report.throughput_hat.value);
    row.mc_throughput_ci = Some(report.throughput_hat.ci_half_width);
    Ok(())
}

/// All rows of one point (one per θ), in θ order.
fn point_rows(spec: &SweepSpec, index: usize, value: f64) -> anyhow::Result<Vec<DataRow>> {
    // Substream derivation: seed ⊕ point index, so points are reproducible
    // independent of scheduling.
    let point_seed = spec.seed ^ index as u64;
    let floor = spec.floor_at(value);
    let mut rows = Vec::with_capacity(spec.theta_list.len());

    for &theta in &spec.theta_list {
        let mut row = DataRow {
            axis: spec.axis.name(),
            axis_value: Some(value),
            theta,
            allocation: spec.allocation.name(),
            ..DataRow::default()
        };

        let params = if spec.optimizes() {
            let template = spec.point_params(value)?;
            let prob = OptProblem {
                kind: spec.kind_for_rows(),
                gamma_min: floor,
                theta,
                gamma_p: template.gamma_p,
                omega_sr: template.omega_sr,
                omega_rd: template.omega_rd,
                objective_mode: ObjectiveMode::Asymptotic,
            };
            let cfg = PsoConfig {
                seed: point_seed ^ 0xA5A5_5A5A_0F0F_F0F0,
                ..PsoConfig::default()
            };
            let pin_etas = matches!(spec.allocation, Allocation::Epa | Allocation::Fixed)
                .then_some(spec.base.etas);
            let pin_rs = (spec.axis == Axis::Rs).then_some(value);
            match solve_pinned(&prob, &cfg, pin_etas, pin_rs) {
                Ok(result) => {
                    row.feasible = Some(result.feasible);
                    if !result.feasible {
                        // Emit the row with parameters but no metric values.
                        let mut p = template;
                        p.d = spec.base.d.or(match spec.axis {
                            Axis::D => Some(value),
                            _ => None,
                        });
                        rows.push(row.with_params(&p));
                        continue;
                    }
                    SystemParams::raw(
                        template.gamma_p,
                        [result.eta1, result.eta2, result.eta3],
                        result.rs,
                        result.rt,
                        template.omega_sr,
                        template.omega_rd,
                    )?
                }
                Err(Error::Infeasible(_)) => {
                    row.feasible = Some(false);
                    rows.push(row.with_params(&spec.point_params(value)?));
                    continue;
                }
                Err(e) => return Err(e.into()),
            }
        } else {
            spec.point_params(value)?
        };

        let mut row = row.with_params(&params);
        fill_metrics(&mut row, &params, theta, spec)?;
        if let Some(n) = spec.mc_samples {
            fill_mc(&mut row, &params, theta, n, point_seed)?;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Runs a sweep; points execute in a worker pool but rows come back in axis
/// order (then θ order within a point).
pub fn run_sweep(spec: &SweepSpec) -> anyhow::Result<Vec<DataRow>> {
    spec.validate()?;
    let nested: Vec<anyhow::Result<Vec<DataRow>>> = spec
        .values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| point_rows(spec, i, v))
        .collect();
    let mut rows = Vec::new();
    for r in nested {
        rows.extend(r?);
    }
    Ok(rows)
}
