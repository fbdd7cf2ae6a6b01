//! Confidential throughput and its closed-form maximizer.

use crate::channel::SystemParams;
use crate::numerics::lambert_w0;
use crate::{Error, Result};

/// Confidential throughput
/// `𝒯 = R_S·exp[−(2^(2R_T)−1)(η₁Ω_SR + Ω_RD(η₂+η₃)) / (γ_P η₁ η₂ Ω_RD Ω_SR)]`,
/// the probability of successful legitimate decoding times the secrecy rate.
pub fn throughput(p: &SystemParams) -> f64 {
    let tau2 = (2.0f64).powf(2.0 * p.rt) - 1.0;
    let num = tau2 * (p.eta1 * p.omega_sr + p.omega_rd * (p.eta2 + p.eta3));
    let den = p.gamma_p * p.eta1 * p.eta2 * p.omega_rd * p.omega_sr;
    p.rs * (-num / den).exp()
}

/// Result of the constrained throughput maximization at a fixed jamming
/// allocation `η₃` (over `R_S = R_T` and `η₂`, with `η₁ = 1 − η₂ − η₃`).
#[derive(Debug, Clone, Copy)]
pub struct ThroughputMax {
    pub t_max: f64,
    pub rs_opt: f64,
    pub eta2_opt: f64,
    /// Set when the closed form disagreed with the numeric one-dimensional
    /// maximizer by more than 1% and the numeric result was returned instead.
    pub numeric_fallback: bool,
}

/// Maximum achievable throughput for a given `η₃`.
///
/// The optimal codeword rate is the minimum permitted one (`R_T = R_S`,
/// since `𝒯` strictly decreases in `R_T`); `η₂` has a closed form with a
/// three-way split on `Ω_SR` vs `Ω_RD`, and the optimal rate solves a
/// stationarity condition through the principal Lambert W branch. The
/// closed form is cross-checked against a golden-section maximizer; on
/// disagreement beyond 1% (or a Lambert-W domain failure) the numeric
/// maximizer is returned with `numeric_fallback` set.
pub fn max_throughput(eta3: f64, p_partial: &SystemParams) -> Result<ThroughputMax> {
    if !(eta3 > 0.0 && eta3 < 1.0) {
        return Err(Error::invalid(format!(
            "eta3 must lie in (0, 1) (got {eta3})"
        )));
    }
    let (gp, osr, ord) = (p_partial.gamma_p, p_partial.omega_sr, p_partial.omega_rd);
    if !(gp > 0.0 && osr > 0.0 && ord > 0.0) {
        return Err(Error::invalid(
            "gamma_p, omega_sr, omega_rd must be positive".to_string(),
        ));
    }

    let eta2 = optimal_eta2(eta3, osr, ord)?;
    let eta1 = 1.0 - eta2 - eta3;

    // Stationarity of R_S·exp(−(2^(2R_S)−1)·c): R_S = W₀(1/c)/ln 4 with
    // c the positive exponent coefficient.
    let c = (eta1 * osr + ord * (eta2 + eta3)) / (gp * eta1 * eta2 * ord * osr);
    let closed = match lambert_w0(1.0 / c) {
        Ok(w) => {
            let rs = w / (4.0f64).ln();
            (rs > 0.0).then_some(rs)
        }
        Err(_) => None,
    };

    let eval = |rs: f64| rs * (-((2.0f64).powf(2.0 * rs) - 1.0) * c).exp();
    // Beyond 2^(2·rs) ≈ 40/c the throughput is exp(-40)-negligible, so this
    // bracket always contains the unimodal peak.
    let rs_hi = 0.5 * (1.0 + 40.0 / c).log2() + 1.0;
    let (rs_num, t_num) = golden_section_max(&eval, 1e-9, rs_hi);

    match closed {
        Some(rs) => {
            let t = eval(rs);
            if (t - t_num).abs() <= 0.01 * t_num.abs().max(1e-300) {
                Ok(ThroughputMax {
                    t_max: t,
                    rs_opt: rs,
                    eta2_opt: eta2,
                    numeric_fallback: false,
                })
            } else {
                Ok(ThroughputMax {
                    t_max: t_num.max(t),
                    rs_opt: if t_num >= t { rs_num } else { rs },
                    eta2_opt: eta2,
                    numeric_fallback: t_num > t,
                })
            }
        }
        None => Ok(ThroughputMax {
            t_max: t_num,
            rs_opt: rs_num,
            eta2_opt: eta2,
            numeric_fallback: true,
        }),
    }
}

/// Stationary `η₂` of the throughput exponent at fixed `η₃`.
fn optimal_eta2(eta3: f64, osr: f64, ord: f64) -> Result<f64> {
    let diff = ord - osr;
    let eta2 = if diff.abs() <= 1e-12 * ord.max(osr) {
        0.5 * (1.0 - eta3)
    } else {
        let e = eta3 * diff + osr; // η₃Ω_RD + (1−η₃)Ω_SR > 0
        let root = (ord * e).sqrt() / diff.abs();
        let base = -eta3 - osr / diff;
        // Of the two stationary roots, the one inside (0, 1−η₃) flips with
        // the sign of Ω_RD − Ω_SR.
        if osr > ord {
            base - root
        } else {
            base + root
        }
    };
    if !(eta2 > 0.0 && eta2 + eta3 < 1.0) {
        return Err(Error::Range(format!(
            "stationary eta2 {eta2} outside (0, {}) for eta3={eta3}",
            1.0 - eta3
        )));
    }
    Ok(eta2)
}

/// Feasibility envelope: the largest `T_max` over an `η₃` grid, with the
/// corresponding optimal rate. The feasible throughput floors are exactly
/// `0 < Γ < envelope`.
pub fn throughput_envelope(p_partial: &SystemParams) -> Result<ThroughputMax> {
    let mut best: Option<ThroughputMax> = None;
    for i in 1..=19 {
        let eta3 = i as f64 * 0.05;
        let m = max_throughput(eta3, p_partial)?;
        if best.is_none_or(|b| m.t_max > b.t_max) {
            best = Some(m);
        }
    }
    best.ok_or_else(|| Error::Range("empty envelope grid".to_string()))
}

fn golden_section_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    if b <= a {
        b = a + 1.0;
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-12 * (1.0 + a.abs()) {
            break;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
