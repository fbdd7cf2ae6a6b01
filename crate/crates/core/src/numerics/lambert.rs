//! Principal branch of the Lambert W function.
//!
//! `lambert_w0(x)` returns the real `w >= -1` with `w·exp(w) = x`, defined for
//! `x >= -1/e`. Halley's iteration is started from a piecewise initial guess:
//! a branch-point series near `x = -1/e`, a Padé-style rational fit around
//! zero, and the asymptotic `ln x - ln ln x` for large arguments.

use crate::{Error, Result};

const INV_E: f64 = 1.0 / std::f64::consts::E;
/// Slack for arguments marginally below the branch point.
const BRANCH_TOL: f64 = 1e-14;
const MAX_ITER: usize = 60;

/// Principal value `W₀(x)` with `w·exp(w) = x` to ~1e-12 relative accuracy.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::invalid(format!(
            "lambert_w0 requires a finite argument (got {x})"
        )));
    }
    if x < -INV_E - BRANCH_TOL {
        return Err(Error::invalid(format!(
            "lambert_w0 argument {x} below branch point -1/e = {}",
            -INV_E
        )));
    }
    let x = x.max(-INV_E);
    if x == 0.0 {
        return Ok(0.0);
    }

    let mut w = initial_guess(x);
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= 1e-13 * x.abs().max(1e-300) {
            break;
        }
        // Halley step: f' = eʷ(w+1), f'' = eʷ(w+2).
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        w -= step;
        if w < -1.0 {
            // Stay on the principal branch.
            w = -1.0 + 1e-12;
        }
        if step.abs() <= 1e-15 * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w.max(-1.0))
}

fn initial_guess(x: f64) -> f64 {
    if x < -INV_E + 0.04 {
        // Series in p = sqrt(2(ex + 1)) about the branch point.
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    }
    if x < 3.0 {
        // Rational fit around zero (adequate to start Halley).
        let num = x * (1.0 + 1.5 * x);
        let den = 1.0 + 2.5 * x + 0.875 * x * x;
        return num / den;
    }
    // Asymptotic for large x (ln x > 1 here, so ln ln x is safe).
    let l1 = x.ln();
    let l2 = l1.ln();
    l1 - l2 + l2 / l1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RandomStream;

    #[test]
    fn fixed_points() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!((lambert_w0(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-12);
        assert!((lambert_w0(-INV_E).unwrap() + 1.0).abs() < 1e-6);
        // W(1) is the omega constant.
        assert!((lambert_w0(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-12);
    }

    #[test]
    fn below_branch_point_is_domain_error() {
        assert!(lambert_w0(-INV_E - 1e-9).is_err());
        assert!(lambert_w0(f64::NAN).is_err());
    }

    #[test]
    fn round_trip_residual() {
        let mut rng = RandomStream::new(0x1a2b);
        for _ in 0..1000 {
            let u = rng.uniform();
            // Random x spanning [-1/e, 1e6], biased toward small magnitudes.
            let x = if u < 0.3 {
                -INV_E + rng.uniform() * INV_E
            } else {
                (rng.uniform() * 6.0 - 0.3).exp2() * 10f64.powf(rng.uniform() * 5.0) - 0.2
            };
            let x = x.clamp(-INV_E, 1e6);
            let w = lambert_w0(x).unwrap();
            assert!(w >= -1.0);
            assert!(
                (w * w.exp() - x).abs() <= 1e-10 * x.abs().max(1.0),
                "residual too large at x={x}: w={w}"
            );
        }
    }
}
