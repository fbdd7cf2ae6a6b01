//! High-SNR asymptotics and the diversity-order slope fit.

use super::metrics::gsop;
use crate::channel::SystemParams;
use crate::{db_to_linear, Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// High-SNR GSOP: a `γ_P^(-1/2)` leading term plus a `γ_P^(-1)` correction.
/// The leading term scales exactly as `γ_P^(-1/2)·Ω_RD^(-1)`, which fixes
/// the diversity order at 1/2.
pub fn gsop_asymptotic(p: &SystemParams, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::invalid(format!(
            "theta must lie in (0, 1] (got {theta})"
        )));
    }
    let t = (2.0f64).powf(2.0 * p.rs * theta);
    let (e1, e2, e3) = (p.eta1, p.eta2, p.eta3);
    let (osr, ord) = (p.omega_sr, p.omega_rd);
    let leading =
        (std::f64::consts::PI * e1 * t * osr / (4.0 * p.gamma_p * e2 * e3 * ord * ord)).sqrt();
    let correction = (2.0 * (1.0 - e1) * e3 * (t - 1.0) * ord + e1 * osr * (e1 + e3 * t - 1.0))
        / (2.0 * p.gamma_p * e1 * e2 * e3 * ord * osr);
    Ok(leading + correction)
}

/// High-SNR average fractional equivocation (all logarithms natural; this is
/// exactly the integral of the high-SNR outage CDF, and is validated against
/// the quadrature AFE in the tests).
pub fn afe_asymptotic(p: &SystemParams) -> f64 {
    let tau = (2.0f64).powf(2.0 * p.rs);
    let ln_tau = tau.ln();
    let (e1, e2, e3) = (p.eta1, p.eta2, p.eta3);
    let (osr, ord) = (p.omega_sr, p.omega_rd);
    let gp = p.gamma_p;

    let prefactor = 1.0 / (2.0 * gp * e1 * e2 * e3 * ord * osr * ln_tau);
    let sqrt_term = -2.0
        * SQRT_PI
        * gp.sqrt()
        * e1.powf(1.5)
        * e2.sqrt()
        * e3.sqrt()
        * (tau.sqrt() - 1.0)
        * osr.powf(1.5);
    let log_term =
        ln_tau * (2.0 * e3 * ord * (gp * e1 * e2 * osr - e1 + 1.0) - (e1 - 1.0) * e1 * osr);
    let linear_term = e3 * (tau - 1.0) * (2.0 * (e1 - 1.0) * ord - e1 * osr);

    prefactor * (sqrt_term + log_term + linear_term)
}

/// High-SNR average information leakage rate `(1 − Δ̄^∞)·R_S`.
pub fn ailr_asymptotic(p: &SystemParams) -> f64 {
    (1.0 - afe_asymptotic(p)) * p.rs
}

/// Least-squares slope of `−log₁₀ f(γ_P)` against `log₁₀ γ_P` over `n`
/// evenly spaced dB points. Errors if `f` underflows below 1e-300 anywhere.
pub fn fit_decay_slope(
    f: impl Fn(f64) -> Result<f64>,
    snr_db_lo: f64,
    snr_db_hi: f64,
    n: usize,
) -> Result<f64> {
    if n < 5 {
        return Err(Error::invalid(format!(
            "slope fit needs at least 5 points (got {n})"
        )));
    }
    if !(snr_db_hi > snr_db_lo) {
        return Err(Error::invalid(format!(
            "slope fit needs snr_db_hi > snr_db_lo (got [{snr_db_lo}, {snr_db_hi}])"
        )));
    }
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let db = snr_db_lo + (snr_db_hi - snr_db_lo) * i as f64 / (n - 1) as f64;
        let gamma = db_to_linear(db);
        let v = f(gamma)?;
        if v < 1e-300 {
            return Err(Error::Range(format!(
                "value underflow ({v:e}) at {db} dB in slope fit"
            )));
        }
        xs.push(gamma.log10());
        ys.push(-v.log10());
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    Ok(num / den)
}

/// Diversity order estimate: slope of `−log₁₀ gsop` vs `log₁₀ γ_P` over
/// the given dB range (9 points), using the closed-form GSOP.
pub fn diversity_order(
    p: &SystemParams,
    theta: f64,
    snr_db_lo: f64,
    snr_db_hi: f64,
) -> Result<f64> {
    if !(snr_db_lo >= 40.0) {
        return Err(Error::invalid(format!(
            "diversity fit requires snr_db_lo >= 40 dB (got {snr_db_lo})"
        )));
    }
    fit_decay_slope(
        |gamma| {
            let mut q = *p;
            q.gamma_p = gamma;
            gsop(&q, theta)
        },
        snr_db_lo,
        snr_db_hi,
        9,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{afe, ailr};
    use crate::numerics::QuadratureSpec;

    fn epa(gamma_db: f64, rs: f64) -> SystemParams {
        SystemParams::epa(db_to_linear(gamma_db), rs, rs, 0.5, 4.0).unwrap()
    }

    #[test]
    fn asymptote_ratio_approaches_one() {
        let p = epa(70.0, 1.0);
        let ratio = gsop_asymptotic(&p, 1.0).unwrap() / gsop(&p, 1.0).unwrap();
        assert!((0.9..=1.1).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn asymptotic_slope_is_one_half() {
        let p = epa(30.0, 1.0);
        let slope = fit_decay_slope(
            |gamma| {
                let mut q = p;
                q.gamma_p = gamma;
                gsop_asymptotic(&q, 1.0)
            },
            80.0,
            100.0,
            9,
        )
        .unwrap();
        assert!((slope - 0.5).abs() <= 1e-3, "slope {slope}");
    }

    #[test]
    fn leading_term_scaling() {
        // Leading term ∝ γ_P^(-1/2)·Ω_RD^(-1): quadrupling γ_P halves it,
        // doubling Ω_RD halves it.
        let p = epa(60.0, 1.0);
        let lead = |gamma_p: f64, ord: f64| {
            (std::f64::consts::PI * p.eta1 * 4.0 * p.omega_sr
                / (4.0 * gamma_p * p.eta2 * p.eta3 * ord * ord))
                .sqrt()
        };
        assert!((lead(4e6, 16.0) - 0.5 * lead(1e6, 16.0)).abs() < 1e-15);
        assert!((lead(1e6, 32.0) - 0.5 * lead(1e6, 16.0)).abs() < 1e-15);
    }

    #[test]
    fn afe_asymptotic_tracks_quadrature_at_60db() {
        let p = epa(60.0, 1.0);
        let asym = afe_asymptotic(&p);
        let quad = afe(&p, &QuadratureSpec::default()).unwrap();
        assert!((asym - quad).abs() <= 0.02, "asym={asym}, quad={quad}");
        assert!((0.0..=1.0).contains(&asym));
    }

    #[test]
    fn afe_asymptotic_in_unit_interval_at_high_snr() {
        for db in [40.0, 50.0, 60.0, 70.0] {
            let v = afe_asymptotic(&epa(db, 1.0));
            assert!((0.0..=1.0).contains(&v), "afe_asymptotic {v} at {db} dB");
        }
    }

    #[test]
    fn ailr_asymptotic_tracks_quadrature_at_60db() {
        let p = epa(60.0, 1.0);
        let asym = ailr_asymptotic(&p);
        let quad = ailr(&p, &QuadratureSpec::default()).unwrap();
        assert!(
            (asym - quad).abs() <= 0.02 * p.rs,
            "asym={asym}, quad={quad}"
        );
    }

    #[test]
    fn diversity_order_of_closed_form() {
        let p = epa(30.0, 1.0);
        let slope = diversity_order(&p, 1.0, 50.0, 70.0).unwrap();
        assert!((slope - 0.5).abs() <= 0.07, "slope {slope}");
    }

    #[test]
    fn slope_fit_calibration_on_pure_power_law() {
        let slope = fit_decay_slope(|gamma| Ok(3.7 / gamma), 40.0, 60.0, 9).unwrap();
        assert!((slope - 1.0).abs() <= 1e-6, "slope {slope}");
    }

    #[test]
    fn slope_fit_guards() {
        assert!(fit_decay_slope(|_| Ok(1e-305), 40.0, 60.0, 9).is_err());
        assert!(fit_decay_slope(|g| Ok(1.0 / g), 40.0, 60.0, 3).is_err());
        let p = epa(30.0, 1.0);
        assert!(diversity_order(&p, 1.0, 30.0, 50.0).is_err());
    }
}
