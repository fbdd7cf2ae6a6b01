//! Auxiliary quantities of the closed-form outage CDF and its additive
//! decomposition.
//!
//! `PsiSet` evaluates the eight ψ quantities at a given `φ`;
//! `PhiTermBreakdown` evaluates the four probability components T₁, T̃₂, T₃,
//! T₄ whose sum must reproduce the assembled single expression exactly
//! (checked to 1e-9 in tests and in the acceptance suite — this identity
//! catches transcription slips in either route).
//!
//! Overflow note: the T₄ term is `√π·η₁φΩ_SR·ψ₃·e^(ψ₆)·erfc(z)`, where both
//! `ψ₆` and `z²` grow like `1/γ_P` (and with φ). It is evaluated as
//! `erfcx(z)·exp(ψ₆ − z²)` so the product stays representable where the
//! naive factors overflow/underflow.

use crate::channel::SystemParams;
use crate::numerics::erfc_scaled;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// The eight auxiliary quantities, evaluated at a given φ.
#[derive(Debug, Clone, Copy)]
pub struct PsiSet {
    pub psi1: f64,
    pub psi2: f64,
    pub psi3: f64,
    pub psi4: f64,
    pub psi5: f64,
    pub psi6: f64,
    pub psi7: f64,
    pub psi8: f64,
}

impl PsiSet {
    pub fn new(p: &SystemParams, phi: f64) -> Self {
        let t = phi;
        let (e1, e2, e3) = (p.eta1, p.eta2, p.eta3);
        let (osr, ord) = (p.omega_sr, p.omega_rd);
        let gp = p.gamma_p;

        let psi1 = ((e2 + e3).powi(2)
            * (e2 * e2 * (t - 1.0).powi(2)
                + 2.0 * e2 * e3 * (2.0 * t * t - t - 1.0)
                + e3 * e3 * (1.0 - 2.0 * t).powi(2))
            / (gp * gp * e1 * e1 * e2 * e2 * e3 * e3))
            .sqrt();

        let psi2 = e2 * e2 * (2.0 * t * t - 2.0 * t + 1.0)
            + e3 * e3 * (5.0 * t * t - 4.0 * t + 1.0)
            + 2.0 * e2 * e3 * (3.0 * t * t - t + gp * e1 * t * psi1 - 1.0);

        let psi3 = 1.0 / (2.0 * ord * (gp * e1 * e2 * e3 * t * osr).sqrt());

        let psi4 = (t - 1.0) * (e2 + e3) / (gp * e1 * e2 * osr);

        let root5 = (-2.0 * t * (e2 * e2 + e2 * e3 + 2.0 * e3 * e3)
            + t * t * (e2 + 2.0 * e3).powi(2)
            + (e2 - e3).powi(2))
        .sqrt();
        let psi5 = (e2 + e3) * root5 / (2.0 * gp * e1 * e2 * e3 * osr)
            + (e2 + e3) * (e2 * (t - 1.0) + e3 * (2.0 * t - 1.0)) / (2.0 * gp * e1 * e2 * e3 * osr);

        let psi6 = (2.0 * e2 * ord * (e1 * t * osr + e3 * (t - 1.0) * ord) + e2 * e2 * ord * ord)
            / (4.0 * gp * e1 * e2 * e3 * t * ord * ord * osr)
            + (e1 * t * osr + e3 * (1.0 - t) * ord).powi(2)
                / (4.0 * gp * e1 * e2 * e3 * t * ord * ord * osr);

        let psi7 = (e1 * osr * (e2 - e3 * t + e3)
            - e1 * (gp * e2 * e3 * ord * psi1 + osr * psi2.sqrt()))
            / (2.0 * gp * e1 * e2 * e3 * ord * osr)
            + (ord * (-e2 - e3) * (e2 * (t - 1.0) + e3 * (2.0 * t - 1.0)))
                / (2.0 * gp * e1 * e2 * e3 * ord * osr);

        let psi8 = (e2 * e2 * (t - 1.0)
            + e3 * e3 * (2.0 * t - 1.0)
            + e2 * e3 * (3.0 * t + gp * e1 * psi1 - 2.0))
            / (2.0 * gp * e1 * e2 * e3 * osr);

        Self {
            psi1,
            psi2,
            psi3,
            psi4,
            psi5,
            psi6,
            psi7,
            psi8,
        }
    }
}

/// `exp(psi6)·erfc(z)` for `z = psi3·(η₁φΩ_SR + Ω_RD·√psi2)`, overflow-safe.
fn exp_psi6_erfc(p: &SystemParams, phi: f64, s: &PsiSet) -> f64 {
    let z = s.psi3 * (p.eta1 * phi * p.omega_sr + p.omega_rd * s.psi2.sqrt());
    erfc_scaled(z) * (s.psi6 - z * z).exp()
}

/// Single-expression closed-form value of `Pr(Φ ≤ φ)` (unclamped).
pub(crate) fn cdf_phi_assembled(p: &SystemParams, phi: f64) -> f64 {
    let s = PsiSet::new(p, phi);
    let (e1, e2, e3) = (p.eta1, p.eta2, p.eta3);
    let lead = SQRT_PI * e1 * phi * p.omega_sr * s.psi3 * exp_psi6_erfc(p, phi, &s);
    lead - (-s.psi5).exp()
        + ((-s.psi5).exp() - (-s.psi4).exp())
            * (-e1 * p.omega_sr * s.psi5 / (p.omega_rd * (e2 + e3))).exp()
        - s.psi7.exp()
        + (-s.psi8).exp()
        + 1.0
}

/// The four probability components of `Pr(Φ ≤ φ)`, with the second term in
/// its high-SNR approximated form. `t2` may be negative; the others are
/// nonnegative probabilities of disjoint events.
#[derive(Debug, Clone, Copy)]
pub struct PhiTermBreakdown {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
}

impl PhiTermBreakdown {
    pub fn new(p: &SystemParams, phi: f64) -> Self {
        let s = PsiSet::new(p, phi);
        let (e1, e2, e3) = (p.eta1, p.eta2, p.eta3);
        let (osr, ord) = (p.omega_sr, p.omega_rd);
        let gp = p.gamma_p;

        // Shared pieces: mixture weight of the two exponential scales, the
        // combined rate, and the Ω_SR/Ω_RD(η₂+η₃) ratio.
        let b = ord * (e2 + e3) / (e1 * osr + ord * (e2 + e3));
        let k = (e1 * osr + ord * (e2 + e3)) / (gp * e1 * e2 * ord * osr);
        let r = e1 * osr / (ord * (e2 + e3));

        let t1 = b * (1.0 - (-(phi - 1.0) * k).exp());

        let t2 = ((-s.psi5).exp() - (-s.psi4).exp()) * (-r * s.psi5).exp()
            + b * ((-(phi - 1.0) * k).exp() - (-s.psi5 * (1.0 + r)).exp());

        let t3 = b * ((-s.psi5 * (1.0 + r)).exp() - 1.0) - (-s.psi5).exp() + 1.0;

        let t4 = SQRT_PI * e1 * phi * osr * s.psi3 * exp_psi6_erfc(p, phi, &s)
            + (-s.psi5).exp()
                * (1.0 - ((e2 - e3 * phi + e3 - s.psi2.sqrt()) / (2.0 * gp * e2 * e3 * ord)).exp());

        Self { t1, t2, t3, t4 }
    }

    /// Sum of the four components.
    pub fn total(&self) -> f64 {
        self.t1 + self.t2 + self.t3 + self.t4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RandomStream;

    fn random_point(rng: &mut RandomStream) -> (SystemParams, f64) {
        // Interior allocations, moderate-to-high SNR, phi in [1, 2^12].
        let e2 = 0.05 + rng.uniform() * 0.85;
        let e3 = 0.05 + (1.0 - e2 - 0.1) * rng.uniform().min(0.999);
        let e1 = (1.0 - e2 - e3).max(1e-3);
        let s = e1 + e2 + e3;
        let gamma_p = 10f64.powf(1.0 + rng.uniform() * 4.0);
        let p = SystemParams::new(
            gamma_p,
            [e1 / s, e2 / s, e3 / s],
            1.0,
            1.0,
            0.5 + rng.uniform() * 100.0,
            0.5 + rng.uniform() * 100.0,
        )
        .unwrap();
        let phi = 1.0 + rng.uniform() * (random_tau(rng) - 1.0);
        (p, phi)
    }

    fn random_tau(rng: &mut RandomStream) -> f64 {
        (2.0f64).powf(2.0 * (0.1 + rng.uniform() * 6.0))
    }

    #[test]
    fn psi_positivity_and_finiteness() {
        let mut rng = RandomStream::new(31);
        for _ in 0..500 {
            let (p, phi) = random_point(&mut rng);
            let s = PsiSet::new(&p, phi);
            assert!(s.psi3 > 0.0);
            for (name, v) in [
                ("psi1", s.psi1),
                ("psi2", s.psi2),
                ("psi3", s.psi3),
                ("psi4", s.psi4),
                ("psi5", s.psi5),
                ("psi6", s.psi6),
                ("psi7", s.psi7),
                ("psi8", s.psi8),
            ] {
                assert!(v.is_finite(), "{name} not finite at {p:?}, phi={phi}");
            }
        }
    }

    #[test]
    fn assembly_identity_on_random_operating_points() {
        let mut rng = RandomStream::new(1913);
        for _ in 0..1000 {
            let (p, phi) = random_point(&mut rng);
            let assembled = cdf_phi_assembled(&p, phi);
            let split = PhiTermBreakdown::new(&p, phi).total();
            assert!(
                (assembled - split).abs() <= 1e-9,
                "identity violated: {assembled} vs {split} at {p:?}, phi={phi}"
            );
        }
    }

    #[test]
    fn breakdown_components_are_probability_like() {
        let mut rng = RandomStream::new(99);
        for _ in 0..500 {
            let (p, phi) = random_point(&mut rng);
            let b = PhiTermBreakdown::new(&p, phi);
            for (name, v) in [("t1", b.t1), ("t2", b.t2), ("t3", b.t3), ("t4", b.t4)] {
                assert!((-1.0..=1.0).contains(&v), "{name}={v} out of [-1,1]");
            }
            assert!(b.t1 >= 0.0);
            assert!(b.t3 >= -1e-12);
            assert!(b.t4 >= -1e-12);
        }
    }

    #[test]
    fn psi5_equals_psi8() {
        // Equal by algebra; both are computed from their own printed forms,
        // so this guards the transcription of each.
        let mut rng = RandomStream::new(4);
        for _ in 0..200 {
            let (p, phi) = random_point(&mut rng);
            let s = PsiSet::new(&p, phi);
            assert!(
                (s.psi5 - s.psi8).abs() <= 1e-9 * s.psi5.abs().max(1.0),
                "psi5={} psi8={}",
                s.psi5,
                s.psi8
            );
        }
    }
}
