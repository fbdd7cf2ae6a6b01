//! Figure presets: canned sweeps reproducing the standard experiment set.
//!
//! All presets use α = 4 and the relay midway (d = 0.5) unless the axis
//! varies them; optimizing presets use the default swarm settings and a
//! throughput floor of 0.5 where one is needed. Ranges follow the visible
//! axes of the corresponding plots and are documented in the README.

use crate::rows::DataRow;
use crate::sweep::{run_sweep, Allocation, Axis, BasePoint, Metric, SweepSpec};
use clap::ValueEnum;
use relay_secrecy::analytic::max_throughput;
use relay_secrecy::channel::SystemParams;
use relay_secrecy::db_to_linear;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

fn range(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    // Round away accumulated binary noise so axis values print cleanly.
    (0..=n)
        .map(|i| ((lo + i as f64 * step) * 1e10).round() / 1e10)
        .collect()
}

fn base_30db() -> BasePoint {
    BasePoint {
        gamma_p_db: 30.0,
        etas: [1.0 / 3.0; 3],
        rs: 1.0,
        rt: None,
        d: Some(0.5),
        alpha: 4.0,
        omegas: None,
    }
}

fn spec(
    axis: Axis,
    values: Vec<f64>,
    allocation: Allocation,
    metrics: Vec<Metric>,
    thetas: Vec<f64>,
    mc_samples: Option<u64>,
    seed: u64,
) -> SweepSpec {
    SweepSpec {
        axis,
        values,
        base: base_30db(),
        metrics,
        theta_list: thetas,
        allocation,
        mc_samples,
        gamma_min: 0.5,
        seed,
    }
}

/// Builds and runs all sweeps of a preset, concatenating their rows.
pub fn run_preset(
    preset: Preset,
    mc_samples: Option<u64>,
    seed: u64,
) -> anyhow::Result<Vec<DataRow>> {
    let thetas3 = vec![0.1, 0.5, 1.0];
    let mut specs: Vec<SweepSpec> = Vec::new();
    match preset {
        // Outage vs SNR, equal power split.
        Preset::Fig2 => {
            let mut s = spec(
                Axis::GammaPDb,
                range(10.0, 50.0, 2.0),
                Allocation::Epa,
                vec![Metric::Gsop],
                thetas3,
                mc_samples,
                seed,
            );
            s.base.d = Some(0.5);
            specs.push(s);
        }
        // Outage vs secrecy rate: equal split plus the three optimized
        // allocations (rate axis pins R_S; the swarm optimizes the rest).
        Preset::Fig3 => {
            for alloc in [
                Allocation::Epa,
                Allocation::Opa1,
                Allocation::Opa2,
                Allocation::Opa3,
            ] {
                specs.push(spec(
                    Axis::Rs,
                    range(0.25, 6.0, 0.25),
                    alloc,
                    vec![Metric::Gsop],
                    thetas3.clone(),
                    mc_samples,
                    seed,
                ));
            }
        }
        // Equivocation and leakage vs secrecy rate.
        Preset::Fig4 => {
            for alloc in [Allocation::Epa, Allocation::Opa2, Allocation::Opa3] {
                specs.push(spec(
                    Axis::Rs,
                    range(0.25, 4.0, 0.25),
                    alloc,
                    vec![Metric::Afe, Metric::Ailr],
                    vec![1.0],
                    mc_samples,
                    seed,
                ));
            }
        }
        // Outage vs relay position.
        Preset::Fig5 => {
            let mut s = spec(
                Axis::D,
                range(0.1, 0.9, 0.05),
                Allocation::Epa,
                vec![Metric::Gsop],
                thetas3,
                mc_samples,
                seed,
            );
            s.base.d = None;
            specs.push(s);
        }
        // Equivocation and leakage vs relay position.
        Preset::Fig6 => {
            let mut s = spec(
                Axis::D,
                range(0.1, 0.9, 0.05),
                Allocation::Epa,
                vec![Metric::Afe, Metric::Ailr],
                vec![1.0],
                mc_samples,
                seed,
            );
            s.base.d = None;
            specs.push(s);
        }
        // Outage vs throughput floor: optimized allocation against the
        // rate-optimized equal split.
        Preset::Fig7 => {
            for alloc in [Allocation::Opa1, Allocation::Epa] {
                specs.push(spec(
                    Axis::GammaMin,
                    range(0.2, 3.6, 0.2),
                    alloc,
                    vec![Metric::Gsop],
                    vec![0.1, 1.0],
                    mc_samples,
                    seed,
                ));
            }
        }
        // Equivocation and leakage vs throughput floor.
        Preset::Fig8 => {
            for alloc in [Allocation::Opa2, Allocation::Opa3, Allocation::Epa] {
                specs.push(spec(
                    Axis::GammaMin,
                    range(0.2, 3.6, 0.2),
                    alloc,
                    vec![Metric::Afe, Metric::Ailr],
                    vec![1.0],
                    mc_samples,
                    seed,
                ));
            }
        }
        // Throughput vs secrecy rate for the equal split and for the
        // stationary relay split η₂ᵀ at η₃ ∈ {0.2, 0.8}, at three relay
        // positions.
        Preset::Fig9 => {
            for d in [0.2, 0.5, 0.8] {
                let mut epa = spec(
                    Axis::Rs,
                    range(0.25, 6.0, 0.25),
                    Allocation::Epa,
                    vec![Metric::Throughput],
                    vec![1.0],
                    mc_samples,
                    seed,
                );
                epa.base.d = Some(d);
                specs.push(epa);

                for eta3 in [0.2, 0.8] {
                    let osr = d.powf(-4.0);
                    let ord = (1.0f64 - d).powf(-4.0);
                    let partial =
                        SystemParams::raw(db_to_linear(30.0), [1.0 / 3.0; 3], 1.0, 1.0, osr, ord)?;
                    let m = max_throughput(eta3, &partial)?;
                    let mut s = spec(
                        Axis::Rs,
                        range(0.25, 6.0, 0.25),
                        Allocation::Fixed,
                        vec![Metric::Throughput],
                        vec![1.0],
                        mc_samples,
                        seed,
                    );
                    s.base.d = Some(d);
                    s.base.etas = [1.0 - m.eta2_opt - eta3, m.eta2_opt, eta3];
                    specs.push(s);
                }
            }
        }
    }

    let mut rows = Vec::new();
    for s in &specs {
        rows.extend(run_sweep(s)?);
    }
    Ok(rows)
}
