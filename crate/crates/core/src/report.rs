//! Bundled metric evaluation for one operating point.

use crate::analytic::{
    afe, afe_asymptotic, ailr, ailr_asymptotic, gsop, gsop_asymptotic, throughput,
};
use crate::channel::SystemParams;
use crate::montecarlo::{simulate, McConfig, McReport};
use crate::numerics::QuadratureSpec;
use crate::Result;

/// One set of metric values: GSOP per θ plus the scalar metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSet {
    /// GSOP values aligned with the θ list used for evaluation.
    pub gsop: Vec<f64>,
    pub afe: f64,
    pub ailr: f64,
    pub throughput: f64,
}

/// All metric values for one operating point, with their provenance:
/// closed-form (`analytic`), high-SNR asymptotics (`asymptotic`), and
/// optionally Monte Carlo estimates with confidence intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct SecrecyReport {
    pub thetas: Vec<f64>,
    pub analytic: MetricSet,
    pub asymptotic: MetricSet,
    pub mc: Option<McReport>,
}

/// Evaluates every metric at `p` for the given θ list; runs the Monte Carlo
/// oracle too when `mc` is provided.
pub fn evaluate(
    p: &SystemParams,
    thetas: &[f64],
    quad: &QuadratureSpec,
    mc: Option<&McConfig>,
) -> Result<SecrecyReport> {
    p.validate()?;
    if thetas.is_empty() {
        return Err(crate::Error::invalid(
            "theta list must be nonempty".to_string(),
        ));
    }

    let analytic = MetricSet {
        gsop: thetas
            .iter()
            .map(|&t| gsop(p, t))
            .collect::<Result<Vec<_>>>()?,
        afe: afe(p, quad)?,
        ailr: ailr(p, quad)?,
        throughput: throughput(p),
    };
    let asymptotic = MetricSet {
        gsop: thetas
            .iter()
            .map(|&t| gsop_asymptotic(p, t))
            .collect::<Result<Vec<_>>>()?,
        afe: afe_asymptotic(p),
        ailr: ailr_asymptotic(p),
        throughput: throughput(p),
    };
    let mc = match mc {
        Some(cfg) => {
            let mut cfg = cfg.clone();
            cfg.theta_grid = thetas.to_vec();
            Some(simulate(p, &cfg)?)
        }
        None => None,
    };

    Ok(SecrecyReport {
        thetas: thetas.to_vec(),
        analytic,
        asymptotic,
        mc,
    })
}
