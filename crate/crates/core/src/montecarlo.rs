//! Monte Carlo oracle for every metric.
//!
//! Draws exponential fading realizations, computes the exact per-realization
//! SINRs (not the min-bound used by the closed forms) and the resulting
//! fractional equivocation, and estimates GSOP, AFE, AILR and throughput
//! with normal-approximation confidence intervals.
//!
//! Sampling is sharded: shard `i` owns the substream `(seed, i)` and samples
//! a fixed-size block, so the estimate is bit-identical for a given seed
//! regardless of how many workers run the shards. Merging is a fold over
//! shard sums in index order.

use crate::channel::{delta_from_phi, transmit_snrs, SystemParams};
use crate::numerics::RandomStream;
use crate::{Error, Result};
use rayon::prelude::*;

/// Samples per shard; one shard is one unit of parallel work.
const SHARD_SIZE: u64 = 1 << 18;

/// Monte Carlo run configuration.
#[derive(Debug, Clone)]
pub struct McConfig {
    pub n_samples: u64,
    pub seed: u64,
    /// Equivocation thresholds for the GSOP estimates, each in (0, 1].
    pub theta_grid: Vec<f64>,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            n_samples: 1_000_000,
            seed: 1,
            theta_grid: vec![1.0],
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 1000 {
            return Err(Error::invalid(format!(
                "n_samples must be >= 1000 (got {})",
                self.n_samples
            )));
        }
        if self.theta_grid.is_empty() {
            return Err(Error::invalid("theta_grid must be nonempty".to_string()));
        }
        for &t in &self.theta_grid {
            if !(t > 0.0 && t <= 1.0) {
                return Err(Error::invalid(format!(
                    "theta must lie in (0, 1] (got {t})"
                )));
            }
        }
        Ok(())
    }
}

/// Point estimate with a 95% confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub ci_half_width: f64,
}

/// Bundle of Monte Carlo estimates for one operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    /// `(θ, estimate)` pairs in `theta_grid` order.
    pub gsop_hat: Vec<(f64, Estimate)>,
    pub afe_hat: Estimate,
    pub ailr_hat: Estimate,
    pub throughput_hat: Estimate,
    pub n_samples: u64,
    pub seed: u64,
}

#[derive(Clone)]
struct Sums {
    outages: Vec<u64>,
    delta_sum: f64,
    delta_sq_sum: f64,
    successes: u64,
}

impl Sums {
    fn new(n_thetas: usize) -> Self {
        Self {
            outages: vec![0; n_thetas],
            delta_sum: 0.0,
            delta_sq_sum: 0.0,
            successes: 0,
        }
    }

    fn merge(mut self, other: &Sums) -> Sums {
        for (a, b) in self.outages.iter_mut().zip(&other.outages) {
            *a += b;
        }
        self.delta_sum += other.delta_sum;
        self.delta_sq_sum += other.delta_sq_sum;
        self.successes += other.successes;
        self
    }
}

#[inline]
fn draw_phi_and_gamma_d(p: &SystemParams, stream: &mut RandomStream) -> (f64, f64) {
    // Inverse-CDF exponential draws, g_SR first then g_RD.
    let g_sr = -p.omega_sr * stream.uniform_open_closed().ln();
    let g_rd = -p.omega_rd * stream.uniform_open_closed().ln();
    let (gs, gr, gd) = transmit_snrs(p);
    let a = gs * g_sr;
    let b = gr * g_rd;
    let j = gd * g_rd;
    let gamma_r = a / (j + 1.0);
    let gamma_d = a * b / (a + b + j + 1.0);
    ((1.0 + gamma_d) / (1.0 + gamma_r), gamma_d)
}

fn shard_bounds(n_samples: u64) -> Vec<(u64, u64)> {
    let n_shards = n_samples.div_ceil(SHARD_SIZE);
    (0..n_shards)
        .map(|i| {
            let start = i * SHARD_SIZE;
            (i, (n_samples - start).min(SHARD_SIZE))
        })
        .collect()
}

/// Estimates all metrics from `cfg.n_samples` independent fading draws.
/// Deterministic for a given `(params, cfg)`.
pub fn simulate(p: &SystemParams, cfg: &McConfig) -> Result<McReport> {
    p.validate()?;
    cfg.validate()?;

    let success_threshold = (2.0f64).powf(2.0 * p.rt) - 1.0;
    let sums = shard_bounds(cfg.n_samples)
        .par_iter()
        .map(|&(shard, count)| {
            let mut stream = RandomStream::substream(cfg.seed, shard);
            let mut s = Sums::new(cfg.theta_grid.len());
            for _ in 0..count {
                let (phi, gamma_d) = draw_phi_and_gamma_d(p, &mut stream);
                let delta = delta_from_phi(phi, p.rs);
                for (k, &theta) in cfg.theta_grid.iter().enumerate() {
                    if delta < theta {
                        s.outages[k] += 1;
                    }
                }
                s.delta_sum += delta;
                s.delta_sq_sum += delta * delta;
                if gamma_d >= success_threshold {
                    s.successes += 1;
                }
            }
            s
        })
        .collect::<Vec<_>>()
        .iter()
        .fold(Sums::new(cfg.theta_grid.len()), Sums::merge);

    let n = cfg.n_samples as f64;
    let proportion = |count: u64| -> Estimate {
        let p_hat = count as f64 / n;
        Estimate {
            value: p_hat,
            ci_half_width: 1.96 * (p_hat * (1.0 - p_hat) / n).sqrt(),
        }
    };

    let gsop_hat = cfg
        .theta_grid
        .iter()
        .zip(&sums.outages)
        .map(|(&theta, &count)| (theta, proportion(count)))
        .collect();

    let mean = sums.delta_sum / n;
    let var = (sums.delta_sq_sum / n - mean * mean).max(0.0) * n / (n - 1.0);
    let afe_hat = Estimate {
        value: mean,
        ci_half_width: 1.96 * (var / n).sqrt(),
    };
    let ailr_hat = Estimate {
        value: (1.0 - mean) * p.rs,
        ci_half_width: afe_hat.ci_half_width * p.rs,
    };
    let success = proportion(sums.successes);
    let throughput_hat = Estimate {
        value: success.value * p.rs,
        ci_half_width: success.ci_half_width * p.rs,
    };

    Ok(McReport {
        gsop_hat,
        afe_hat,
        ailr_hat,
        throughput_hat,
        n_samples: cfg.n_samples,
        seed: cfg.seed,
    })
}

/// Empirical CDF of `Φ` on a sorted grid, all points sharing one sample set.
/// Uses the same substream scheme and draw order as [`simulate`], so values
/// at `φ = 2^(2·R_S·θ)` coincide with the corresponding GSOP estimates.
pub fn empirical_cdf_phi(
    p: &SystemParams,
    phi_grid: &[f64],
    cfg: &McConfig,
) -> Result<Vec<(f64, Estimate)>> {
    p.validate()?;
    if cfg.n_samples < 1000 {
        return Err(Error::invalid(format!(
            "n_samples must be >= 1000 (got {})",
            cfg.n_samples
        )));
    }
    if phi_grid.is_empty() {
        return Err(Error::invalid("phi_grid must be nonempty".to_string()));
    }
    if phi_grid.windows(2).any(|w| w[0] > w[1]) || phi_grid.iter().any(|&v| v < 0.0) {
        return Err(Error::invalid(
            "phi_grid must be sorted and nonnegative".to_string(),
        ));
    }

    let m = phi_grid.len();
    let hist = shard_bounds(cfg.n_samples)
        .par_iter()
        .map(|&(shard, count)| {
            let mut stream = RandomStream::substream(cfg.seed, shard);
            // hist[k] counts samples whose first grid point >= phi is k.
            let mut hist = vec![0u64; m + 1];
            for _ in 0..count {
                let (phi, _) = draw_phi_and_gamma_d(p, &mut stream);
                let pos = phi_grid.partition_point(|&g| g < phi);
                hist[pos] += 1;
            }
            hist
        })
        .collect::<Vec<_>>()
        .iter()
        .fold(vec![0u64; m + 1], |mut acc, h| {
            for (a, b) in acc.iter_mut().zip(h) {
                *a += b;
            }
            acc
        });

    let n = cfg.n_samples as f64;
    let mut cumulative = 0u64;
    Ok(phi_grid
        .iter()
        .enumerate()
        .map(|(k, &phi)| {
            cumulative += hist[k];
            let p_hat = cumulative as f64 / n;
            (
                phi,
                Estimate {
                    value: p_hat,
                    ci_half_width: 1.96 * (p_hat * (1.0 - p_hat) / n).sqrt(),
                },
            )
        })
        .collect())
}
