//! System parameterization and per-realization link quantities.
//!
//! The network is source S → untrusted relay R → destination D over
//! quasi-static Rayleigh fading, with the destination jamming the relay
//! during the first hop and cancelling its own jamming from the forwarded
//! signal. Noise power is normalized to 1 so every quantity is in the SNR
//! domain; channel gains `g` are exponential with mean `Ω`, shared between
//! the R→D and D→R directions (gain reciprocity, distinct transmit powers).

use crate::{Error, Result};

/// Tolerance on `η₁+η₂+η₃ = 1`.
const ETA_SUM_TOL: f64 = 1e-9;

/// One operating point of the network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Total transmit SNR `γ_P = P/N₀` (linear).
    pub gamma_p: f64,
    /// Power allocation factor at the source.
    pub eta1: f64,
    /// Power allocation factor at the relay.
    pub eta2: f64,
    /// Power allocation factor at the destination (jamming power).
    pub eta3: f64,
    /// Target secrecy rate `R_S` in bits/s/Hz.
    pub rs: f64,
    /// Codeword transmission rate `R_T ≥ R_S` in bits/s/Hz.
    pub rt: f64,
    /// Mean S→R channel gain `Ω_SR`.
    pub omega_sr: f64,
    /// Mean R→D (= D→R) channel gain `Ω_RD`.
    pub omega_rd: f64,
    /// Path-loss exponent used when the geometry is distance-driven.
    pub alpha: f64,
    /// Normalized S→R distance in (0, 1); when set, it determines the mean
    /// gains as `Ω_SR = d^(−α)`, `Ω_RD = (1−d)^(−α)`.
    pub d: Option<f64>,
}

impl SystemParams {
    /// Operating point with explicit mean channel gains.
    pub fn new(
        gamma_p: f64,
        etas: [f64; 3],
        rs: f64,
        rt: f64,
        omega_sr: f64,
        omega_rd: f64,
    ) -> Result<Self> {
        let p = Self {
            gamma_p,
            eta1: etas[0],
            eta2: etas[1],
            eta3: etas[2],
            rs,
            rt,
            omega_sr,
            omega_rd,
            alpha: 4.0,
            d: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// Operating point with gains derived from the relay position:
    /// `Ω_SR = d^(−α)`, `Ω_RD = (1−d)^(−α)`.
    pub fn with_distance(
        gamma_p: f64,
        etas: [f64; 3],
        rs: f64,
        rt: f64,
        d: f64,
        alpha: f64,
    ) -> Result<Self> {
        if !(d > 0.0 && d < 1.0) {
            return Err(Error::invalid(format!(
                "relay distance d must lie in (0, 1) (got {d})"
            )));
        }
        if !(alpha > 0.0) {
            return Err(Error::invalid(format!(
                "path-loss exponent alpha must be > 0 (got {alpha})"
            )));
        }
        let p = Self {
            gamma_p,
            eta1: etas[0],
            eta2: etas[1],
            eta3: etas[2],
            rs,
            rt,
            omega_sr: d.powf(-alpha),
            omega_rd: (1.0 - d).powf(-alpha),
            alpha,
            d: Some(d),
        };
        p.validate()?;
        Ok(p)
    }

    /// Equal power allocation (`η = 1/3` each) at relay position `d`.
    pub fn epa(gamma_p: f64, rs: f64, rt: f64, d: f64, alpha: f64) -> Result<Self> {
        Self::with_distance(gamma_p, [1.0 / 3.0; 3], rs, rt, d, alpha)
    }

    /// Construction without the full invariant set, for optimizer search
    /// points: positivity is enforced but the η-sum and rate ordering are
    /// not (infeasible points get evaluated and penalized, not rejected).
    pub fn raw(
        gamma_p: f64,
        etas: [f64; 3],
        rs: f64,
        rt: f64,
        omega_sr: f64,
        omega_rd: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("gamma_p", gamma_p),
            ("eta1", etas[0]),
            ("eta2", etas[1]),
            ("eta3", etas[2]),
            ("rs", rs),
            ("rt", rt),
            ("omega_sr", omega_sr),
            ("omega_rd", omega_rd),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be positive (got {v})")));
            }
        }
        Ok(Self {
            gamma_p,
            eta1: etas[0],
            eta2: etas[1],
            eta3: etas[2],
            rs,
            rt,
            omega_sr,
            omega_rd,
            alpha: 4.0,
            d: None,
        })
    }

    /// Checks every invariant, naming the first violated one.
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma_p > 0.0) || !self.gamma_p.is_finite() {
            return Err(Error::invalid(format!(
                "gamma_p must be positive (got {})",
                self.gamma_p
            )));
        }
        for (name, v) in [
            ("eta1", self.eta1),
            ("eta2", self.eta2),
            ("eta3", self.eta3),
        ] {
            if !(v > 0.0) {
                return Err(Error::invalid(format!("{name} must be > 0 (got {v})")));
            }
        }
        let sum = self.eta1 + self.eta2 + self.eta3;
        if (sum - 1.0).abs() > ETA_SUM_TOL {
            return Err(Error::invalid(format!(
                "eta sum must equal 1 within {ETA_SUM_TOL:e} (got {sum})"
            )));
        }
        if !(self.rs > 0.0) {
            return Err(Error::invalid(format!("rs must be > 0 (got {})", self.rs)));
        }
        if self.rt < self.rs {
            return Err(Error::invalid(format!(
                "rate order requires rs <= rt (got rs={}, rt={})",
                self.rs, self.rt
            )));
        }
        for (name, v) in [("omega_sr", self.omega_sr), ("omega_rd", self.omega_rd)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be > 0 (got {v})")));
            }
        }
        if let Some(d) = self.d {
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::invalid(format!("d must lie in (0, 1) (got {d})")));
            }
            let esr = d.powf(-self.alpha);
            let erd = (1.0 - d).powf(-self.alpha);
            if (esr - self.omega_sr).abs() > 1e-9 * esr || (erd - self.omega_rd).abs() > 1e-9 * erd
            {
                return Err(Error::invalid(
                    "omega values inconsistent with distance d and alpha".to_string(),
                ));
            }
        }
        Ok(())
    }
}

/// One fading draw: the S→R gain and the shared R↔D gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelRealization {
    pub g_sr: f64,
    pub g_rd: f64,
}

impl ChannelRealization {
    pub fn new(g_sr: f64, g_rd: f64) -> Result<Self> {
        if !(g_sr >= 0.0 && g_sr.is_finite() && g_rd >= 0.0 && g_rd.is_finite()) {
            return Err(Error::invalid(format!(
                "channel gains must be finite and nonnegative (got g_sr={g_sr}, g_rd={g_rd})"
            )));
        }
        Ok(Self { g_sr, g_rd })
    }
}

/// Per-realization SINRs at the relay (eavesdropping) and destination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSinrs {
    /// SINR of the first-hop signal at the untrusted relay, degraded by the
    /// destination's jamming.
    pub gamma_r: f64,
    /// End-to-end SINR of the amplified-and-forwarded signal at the
    /// destination, after jamming cancellation.
    pub gamma_d: f64,
}

/// Transmit SNRs `(γ_S, γ_R, γ_D) = (η₁γ_P, η₂γ_P, η₃γ_P)`.
pub fn transmit_snrs(p: &SystemParams) -> (f64, f64, f64) {
    (p.eta1 * p.gamma_p, p.eta2 * p.gamma_p, p.eta3 * p.gamma_p)
}

/// Amplify-and-forward gain `G = 1/√(P_S·g_SR + P_D·g_RD + N₀)` for noise
/// power `n0`.
pub fn amplification_factor(p: &SystemParams, c: &ChannelRealization, n0: f64) -> f64 {
    debug_assert!(n0 > 0.0, "noise power must be positive");
    let p_s = p.eta1 * p.gamma_p * n0;
    let p_d = p.eta3 * p.gamma_p * n0;
    1.0 / (p_s * c.g_sr + p_d * c.g_rd + n0).sqrt()
}

/// Exact per-realization SINRs:
///
/// Γ_R = γ_S·g_SR / (γ_D·g_RD + 1)
/// Γ_D = γ_S·g_SR·γ_R·g_RD / (γ_S·g_SR + γ_R·g_RD + γ_D·g_RD + 1)
pub fn link_sinrs(p: &SystemParams, c: &ChannelRealization) -> LinkSinrs {
    let (gs, gr, gd) = transmit_snrs(p);
    let a = gs * c.g_sr;
    let b = gr * c.g_rd;
    let j = gd * c.g_rd;
    LinkSinrs {
        gamma_r: a / (j + 1.0),
        gamma_d: a * b / (a + b + j + 1.0),
    }
}

/// Upper bound on Γ_D obtained by replacing the two-hop harmonic-mean form
/// with `min`: `(γ_R/(γ_R+γ_D))·min(γ_S·g_SR, (γ_R+γ_D)·g_RD)`. This is the
/// bound under which the closed-form outage expressions are derived.
pub fn gamma_d_min_bound(p: &SystemParams, c: &ChannelRealization) -> f64 {
    let (gs, gr, gd) = transmit_snrs(p);
    gr / (gr + gd) * (gs * c.g_sr).min((gr + gd) * c.g_rd)
}

/// Half-duplex channel capacities `(C_L, C_E)` of the legitimate and
/// eavesdropper links: `½·log₂(1+Γ)`.
pub fn capacities(s: &LinkSinrs) -> (f64, f64) {
    (
        0.5 * (1.0 + s.gamma_d).log2(),
        0.5 * (1.0 + s.gamma_r).log2(),
    )
}

/// Ratio `Φ = (1+Γ_D)/(1+Γ_R)` that the per-realization equivocation is a
/// function of.
pub fn phi_ratio(s: &LinkSinrs) -> f64 {
    (1.0 + s.gamma_d) / (1.0 + s.gamma_r)
}

/// Per-realization fractional equivocation at the relay:
///
/// Δ = 1                 if Φ ≥ 2^(2·rs)
/// Δ = log₂(Φ)/(2·rs)    if 1 < Φ < 2^(2·rs)
/// Δ = 0                 if Φ ≤ 1
pub fn fractional_equivocation(s: &LinkSinrs, rs: f64) -> f64 {
    delta_from_phi(phi_ratio(s), rs)
}

/// Equivocation as a function of Φ directly.
pub fn delta_from_phi(phi: f64, rs: f64) -> f64 {
    debug_assert!(rs > 0.0);
    let threshold = (2.0f64).powf(2.0 * rs);
    if phi >= threshold {
        1.0
    } else if phi <= 1.0 {
        0.0
    } else {
        phi.log2() / (2.0 * rs)
    }
}
