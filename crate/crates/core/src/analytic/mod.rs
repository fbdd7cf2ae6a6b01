//! Closed-form and quadrature-based secrecy metrics.
//!
//! The outage CDF of `Φ = (1+Γ_D)/(1+Γ_R)` admits a closed-form
//! approximation (tight from medium-to-high SNR) built from eight auxiliary
//! quantities; GSOP, AFE and AILR all reduce to it. High-SNR asymptotics,
//! the confidential-throughput expression and its closed-form maximizer
//! live here too, each paired with independent oracles in the tests.

mod asymptotic;
mod metrics;
mod psi;
mod throughput;

pub use asymptotic::{
    afe_asymptotic, ailr_asymptotic, diversity_order, fit_decay_slope, gsop_asymptotic,
};
pub use metrics::{afe, ailr, cdf_phi, clamp_warning_count, gsop, reset_clamp_warnings};
pub use psi::{PhiTermBreakdown, PsiSet};
pub use throughput::{max_throughput, throughput, throughput_envelope, ThroughputMax};
