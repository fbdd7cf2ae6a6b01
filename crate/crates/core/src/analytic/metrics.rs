//! GSOP, AFE and AILR from the closed-form outage CDF.

use super::psi::cdf_phi_assembled;
use crate::channel::SystemParams;
use crate::numerics::{integrate, QuadratureSpec};
use crate::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

/// Counts evaluations where the closed-form CDF left [0, 1] and was clamped.
/// The approximation can stray slightly outside at low SNR; clamping is the
/// intended behavior and this counter is the warning channel for it.
static CLAMP_WARNINGS: AtomicU64 = AtomicU64::new(0);

/// Number of clamped CDF evaluations since the last reset.
pub fn clamp_warning_count() -> u64 {
    CLAMP_WARNINGS.load(Ordering::Relaxed)
}

/// Resets the clamp-warning counter.
pub fn reset_clamp_warnings() {
    CLAMP_WARNINGS.store(0, Ordering::Relaxed);
}

/// Closed-form approximation of `Pr(Φ ≤ phi)`, clamped to [0, 1].
///
/// The derivation splits the event space at `φ = 1`, so arguments below 1
/// are a domain error.
pub fn cdf_phi(phi: f64, p: &SystemParams) -> Result<f64> {
    if !(phi >= 1.0) {
        return Err(Error::invalid(format!(
            "cdf_phi requires phi >= 1 (got {phi})"
        )));
    }
    let v = cdf_phi_assembled(p, phi);
    if !(0.0..=1.0).contains(&v) {
        CLAMP_WARNINGS.fetch_add(1, Ordering::Relaxed);
    }
    Ok(v.clamp(0.0, 1.0))
}

/// Generalized secrecy outage probability `Pr(Δ < θ) = F_Φ(2^(2·R_S·θ))`.
///
/// `θ ∈ (0, 1]` is the minimum acceptable fractional equivocation; `θ = 1`
/// recovers the classical secrecy outage probability.
pub fn gsop(p: &SystemParams, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::invalid(format!(
            "theta must lie in (0, 1] (got {theta})"
        )));
    }
    cdf_phi((2.0f64).powf(2.0 * p.rs * theta), p)
}

/// Average fractional equivocation
/// `Δ̄ = 1 − (1/(2·R_S·ln 2)) ∫₁^(2^(2·R_S)) F_Φ(φ)/φ dφ`.
///
/// This is the simplified form of the integration-by-parts expression: the
/// boundary coefficient `(1 − ln(2^(2R_S))/(2R_S·ln 2))` vanishes
/// identically, as does the `ln(1)·F_Φ(1)` term (the literal and simplified
/// forms are checked against each other in the tests).
pub fn afe(p: &SystemParams, spec: &QuadratureSpec) -> Result<f64> {
    let upper = (2.0f64).powf(2.0 * p.rs);
    let integral = integrate(
        |phi| cdf_phi(phi, p).expect("phi >= 1 inside the integration interval") / phi,
        1.0,
        upper,
        spec,
    )?;
    Ok(1.0 - integral / (2.0 * p.rs * std::f64::consts::LN_2))
}

/// Average information leakage rate `R_L = (1 − Δ̄)·R_S`.
pub fn ailr(p: &SystemParams, spec: &QuadratureSpec) -> Result<f64> {
    Ok((1.0 - afe(p, spec)?) * p.rs)
}
