//! Special functions, adaptive quadrature, and seeded random sampling.
//!
//! Everything here is deterministic: the special functions are pure, the
//! quadrature is fixed-rule adaptive bisection, and [`RandomStream`] is an
//! explicitly seeded counter-based generator with derived substreams.

mod erfcx;
mod lambert;
mod quad;
mod random;

pub use erfcx::erfc_scaled;
pub use lambert::lambert_w0;
pub use quad::integrate;
pub use random::{exponential_inverse_cdf, sample_exponential, RandomStream};

use crate::Error;

/// Accuracy/budget controls for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Absolute error target.
    pub abs_tol: f64,
    /// Relative error target (against the running estimate).
    pub rel_tol: f64,
    /// Maximum number of interval subdivisions before giving up.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 200,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::invalid(format!(
                "quadrature abs_tol must be > 0 (got {})",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::invalid(format!(
                "quadrature rel_tol must be > 0 (got {})",
                self.rel_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::invalid(
                "quadrature max_subdivisions must be >= 1".to_string(),
            ));
        }
        Ok(())
    }
}
