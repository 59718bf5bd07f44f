//! Fixed-Talbot numerical inversion of the Laplace transform.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Contour settings for [`talbot_inverse`].
///
/// `shift` moves the contour right by a fixed amount. It must exceed the
/// real part of every singularity of the transform, e.g. the bound-state
/// pole of an attractive point interaction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TalbotSpec {
    pub node_count: usize,
    pub contour_scale: f64,
    pub shift: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for TalbotSpec {
    fn default() -> Self {
        TalbotSpec {
            node_count: 32,
            contour_scale: 1.0,
            shift: 0.0,
            rel_tol: 1e-8,
            abs_tol: 1e-12,
        }
    }
}

impl TalbotSpec {
    pub fn with_shift(self, shift: f64) -> Self {
        TalbotSpec { shift, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_count < 16 || !self.node_count.is_multiple_of(2) {
            return Err(Error::Argument(format!(
                "Talbot node count must be even and >= 16, got {}",
                self.node_count
            )));
        }
        if !(self.contour_scale > 0.0 && self.contour_scale.is_finite()) {
            return Err(Error::Argument(format!(
                "Talbot contour scale must be > 0, got {}",
                self.contour_scale
            )));
        }
        if !self.shift.is_finite() || !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) {
            return Err(Error::Argument(format!("invalid Talbot settings {self:?}")));
        }
        Ok(())
    }
}

/// One fixed-Talbot sum with `m` nodes.
fn talbot_sum<F: Fn(Complex64) -> Complex64>(f: &F, tau: f64, m: usize, scale: f64, shift: f64) -> f64 {
    let mf = m as f64;
    let r = scale * 2.0 * mf / (5.0 * tau);
    let mut total = 0.5 * f(Complex64::new(r + shift, 0.0)).re * (r * tau).exp();
    for k in 1..m {
        let theta = k as f64 * PI / mf;
        let cot = theta.cos() / theta.sin();
        let s = Complex64::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        let term = (s * tau).exp() * f(s + shift) * Complex64::new(1.0, sigma);
        total += term.re;
    }
    r / mf * total * (shift * tau).exp()
}

/// Inverse Laplace transform of `f` at `τ`.
///
/// The result is recomputed with twice the nodes on a contour of half the
/// scale, which keeps the crossing point on the real axis fixed; the two
/// must agree to `max(rel_tol·|value|, abs_tol)`.
pub fn talbot_inverse<F: Fn(Complex64) -> Complex64>(f: F, tau: f64, spec: &TalbotSpec) -> Result<f64> {
    spec.validate()?;
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::domain("talbot_inverse", format!("tau must be > 0, got {tau}")));
    }
    let coarse = talbot_sum(&f, tau, spec.node_count, spec.contour_scale, spec.shift);
    let fine = talbot_sum(&f, tau, 2 * spec.node_count, 0.5 * spec.contour_scale, spec.shift);
    if !(coarse.is_finite() && fine.is_finite()) {
        return Err(Error::no_convergence(
            "talbot_inverse",
            format!("non-finite contour sum at tau = {tau} ({coarse}, {fine})"),
        ));
    }
    let diff = (fine - coarse).abs();
    let tol = spec.abs_tol.max(spec.rel_tol * fine.abs());
    if diff > tol {
        return Err(Error::no_convergence(
            "talbot_inverse",
            format!(
                "{} and {} nodes differ by {diff:e} at tau = {tau} (tolerance {tol:e})",
                spec.node_count,
                2 * spec.node_count
            ),
        ));
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::erf::erfcx;
    use approx::assert_relative_eq;

    #[test]
    fn simple_pole() {
        let v = talbot_inverse(|s| 1.0 / (s + 1.0), 1.0, &TalbotSpec::default()).unwrap();
        assert_relative_eq!(v, (-1.0f64).exp(), max_relative = 1e-10);
    }

    #[test]
    fn inverse_sqrt() {
        let v = talbot_inverse(|s: Complex64| 1.0 / s.sqrt(), 1.0, &TalbotSpec::default()).unwrap();
        assert_relative_eq!(v, 1.0 / PI.sqrt(), max_relative = 1e-9);
    }

    #[test]
    fn branch_point_with_exponential() {
        // exp(-a√s)/(√s + b) at a = b = 1
        let f = |s: Complex64| (-s.sqrt()).exp() / (s.sqrt() + 1.0);
        let exact = (-0.25f64).exp() / PI.sqrt() - (-0.25f64).exp() * erfcx(1.5).unwrap();
        let v = talbot_inverse(f, 1.0, &TalbotSpec::default()).unwrap();
        assert_relative_eq!(v, exact, max_relative = 1e-9);
        assert_relative_eq!(v, 0.188_940_315_308_756, max_relative = 1e-10);
    }

    #[test]
    fn growing_pole_needs_shift() {
        let f = |s: Complex64| 1.0 / (s - 0.5);
        let spec = TalbotSpec::default().with_shift(0.5);
        let v = talbot_inverse(f, 2.0, &spec).unwrap();
        assert_relative_eq!(v, 1.0f64.exp(), max_relative = 1e-10);
    }

    #[test]
    fn invalid_specs() {
        let f = |s: Complex64| 1.0 / (s + 1.0);
        let spec = TalbotSpec { node_count: 15, ..TalbotSpec::default() };
        assert!(talbot_inverse(f, 1.0, &spec).is_err());
        let spec = TalbotSpec { node_count: 8, ..TalbotSpec::default() };
        assert!(talbot_inverse(f, 1.0, &spec).is_err());
        let spec = TalbotSpec { contour_scale: 0.0, ..TalbotSpec::default() };
        assert!(talbot_inverse(f, 1.0, &spec).is_err());
        assert!(talbot_inverse(f, 0.0, &TalbotSpec::default()).is_err());
    }

    #[test]
    fn disagreement_is_an_error() {
        let spec = TalbotSpec { rel_tol: 1e-300, abs_tol: 0.0, ..TalbotSpec::default() };
        let err = talbot_inverse(|s: Complex64| 1.0 / s.sqrt(), 1.0, &spec).unwrap_err();
        assert!(err.is_numerical());
    }
}
