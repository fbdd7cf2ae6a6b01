//! Secrecy performance toolkit for a three-node amplify-and-forward relaying
//! network in which the relay is untrusted and the destination transmits
//! artificial noise during the first hop (destination-based jamming).
//!
//! The crate evaluates partial-secrecy metrics over Rayleigh block fading:
//!
//! - generalized secrecy outage probability (GSOP), `Pr(Δ < θ)`,
//! - average fractional equivocation (AFE), `Δ̄ = E[Δ]`,
//! - average information leakage rate (AILR), `R_L = (1 − Δ̄)·R_S`,
//! - confidential throughput, `𝒯 = Pr(successful decoding)·R_S`,
//!
//! where `Δ` is the per-realization fractional equivocation at the relay.
//! Each metric is available through two independent routes: closed-form /
//! quadrature expressions ([`analytic`]) and a seeded Monte Carlo simulator
//! ([`montecarlo`]) that draws fading realizations and evaluates the exact
//! per-realization SINRs. Constrained power/rate allocation (minimum GSOP,
//! maximum AFE, or minimum AILR subject to a throughput floor) is solved by
//! particle swarm optimization with a brute-force grid oracle ([`optimizer`]).

// Validation deliberately writes `!(v > 0.0)` so NaN fails the check;
// clippy's suggested `v <= 0.0` silently admits NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod channel;
mod error;
pub mod montecarlo;
pub mod numerics;
pub mod optimizer;
pub mod report;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Converts a decibel SNR value to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear SNR value to decibels.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
