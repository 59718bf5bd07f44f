//! Free-particle propagators with the quartic GUP dispersion.
//!
//! Closed forms are first order in α. The oracles integrate the plane-wave
//! representation `(1/2π) ∫ dk e^{ikΔq} e^{−E(k)τ/ℏ}` directly.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::extrapolate::richardson_extrapolate;
use crate::numerics::laplace::laplace_forward;
use crate::numerics::quad::{integrate, Quadratures};
use crate::params::{flag_correction, ComplexValue, PhysParams, PropagatorQuery};

/// How the oracle treats the α term of the Boltzmann weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMode {
    /// `e^{−E(k)τ/ℏ}` with the quartic term kept in the exponent.
    FullExponent,
    /// The weight expanded to first order in α.
    Truncated,
}

/// Imaginary parts of the complex time used by [`kernel_oracle`] before
/// extrapolating to the real-time axis.
pub const KERNEL_ETAS: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];

// Tail cut: the Gaussian factor of the weight is below e^{-TAIL_EXPONENT}.
const TAIL_EXPONENT: f64 = 50.0;

/// `E(k) = ℏ²k²/2m + αℏ⁴k⁴/m`.
pub fn dispersion(p: &PhysParams, k: f64) -> f64 {
    let hk2 = (p.hbar * k).powi(2);
    hk2 / (2.0 * p.m) + p.alpha * hk2 * hk2 / p.m
}

/// Euclidean propagator `G₀(q_f, q_0; τ)`.
pub fn free_euclidean(p: &PhysParams, q: &PropagatorQuery) -> Result<f64> {
    let tau = q.tau("free_euclidean")?;
    let dq = q.q_f - q.q_0;
    let correction = -3.0 * p.hbar * p.m / tau + 6.0 * (p.m * dq / tau).powi(2);
    flag_correction("free_euclidean", p.alpha * correction, 1.0);
    Ok(euclidean_closed(p, dq, tau))
}

pub(crate) fn euclidean_closed(p: &PhysParams, dq: f64, tau: f64) -> f64 {
    let PhysParams { hbar, m, alpha, .. } = *p;
    let dq2 = dq * dq;
    let correction = -3.0 * hbar * m / tau + 6.0 * m * m * dq2 / (tau * tau);
    let gauss = m * dq2 / (2.0 * hbar * tau);
    let stretch = 1.0 + alpha * 2.0 * m * m * dq2 / (tau * tau);
    (m / (2.0 * PI * hbar * tau)).sqrt() * (1.0 + alpha * correction) * (-(gauss * stretch)).exp()
}

/// The Euclidean closed form continued to complex time.
pub fn euclidean_closed_complex(p: &PhysParams, dq: f64, tau: Complex64) -> Complex64 {
    let PhysParams { hbar, m, alpha, .. } = *p;
    let dq2 = dq * dq;
    let pref = (m / (2.0 * PI * hbar * tau)).sqrt();
    let bracket = 1.0 + alpha * (-3.0 * hbar * m / tau + 6.0 * m * m * dq2 / (tau * tau));
    let expo = -(m * dq2 / (2.0 * hbar * tau)) * (1.0 + alpha * 2.0 * m * m * dq2 / (tau * tau));
    pref * bracket * expo.exp()
}

/// Real-time kernel `K(q_f, q_0; T)`, the Euclidean form at `τ = iT`.
///
/// The square root takes the principal branch, so the α = 0 kernel at
/// coincident points carries the phase `e^{−iπ/4}` for `T > 0`.
pub fn free_kernel(p: &PhysParams, q: &PropagatorQuery) -> Result<ComplexValue> {
    let t = q.real_time("free_kernel")?;
    let v = euclidean_closed_complex(p, q.q_f - q.q_0, Complex64::new(0.0, t));
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::domain("free_kernel", format!("non-finite kernel at T = {t}")));
    }
    Ok(v)
}

/// Energy-domain Green's function `Ĝ₀(q_f, q_0; ε)`.
pub fn free_green(p: &PhysParams, q: &PropagatorQuery) -> Result<f64> {
    let eps = q.epsilon("free_green")?;
    flag_correction("free_green", p.alpha * 6.0 * p.hbar * p.m * eps, 1.0);
    Ok(green_closed(p, (q.q_f - q.q_0).abs(), eps))
}

pub(crate) fn green_closed(p: &PhysParams, dq: f64, eps: f64) -> f64 {
    let PhysParams { hbar, m, alpha, .. } = *p;
    let shift = alpha * 6.0 * hbar * m * eps;
    let kappa = (2.0 * m * eps / hbar).sqrt() * (1.0 + alpha * 2.0 * hbar * m * eps);
    (m / (2.0 * hbar * eps)).sqrt() * (1.0 + shift) * (-kappa * dq).exp()
}

/// `G₀` from the plane-wave integral, `(1/π) ∫_0^∞ cos(kΔq) w(k) dk`.
pub fn euclidean_oracle(p: &PhysParams, q: &PropagatorQuery, mode: OracleMode, quad: &Quadratures) -> Result<f64> {
    let tau = q.tau("euclidean_oracle")?;
    oracle_real(p, q.q_f - q.q_0, tau, mode, quad)
}

fn oracle_real(p: &PhysParams, dq: f64, tau: f64, mode: OracleMode, quad: &Quadratures) -> Result<f64> {
    let PhysParams { hbar, m, alpha, .. } = *p;
    let k_max = k_cutoff(p, tau);
    let weight = |k: f64| match mode {
        OracleMode::FullExponent => (-dispersion(p, k) * tau / hbar).exp(),
        OracleMode::Truncated => {
            let k2 = k * k;
            (-hbar * k2 * tau / (2.0 * m)).exp() * (1.0 - alpha * hbar.powi(3) * k2 * k2 * tau / m)
        }
    };
    let est = integrate(|k| (k * dq).cos() * weight(k), 0.0, k_max, quad)?;
    Ok(est.value / PI)
}

fn k_cutoff(p: &PhysParams, re_tau: f64) -> f64 {
    // The truncated weight carries a k⁴ factor; the extra margin covers it.
    let base = (2.0 * p.m * TAIL_EXPONENT / (p.hbar * re_tau)).sqrt();
    base * 1.25
}

/// Real-time kernel from the plane-wave integral at complex time
/// `τ = η + iT`, extrapolated to η → 0 over [`KERNEL_ETAS`].
pub fn kernel_oracle(p: &PhysParams, q: &PropagatorQuery, mode: OracleMode, quad: &Quadratures) -> Result<ComplexValue> {
    let t = q.real_time("kernel_oracle")?;
    let dq = q.q_f - q.q_0;
    let mut re = Vec::with_capacity(KERNEL_ETAS.len());
    let mut im = Vec::with_capacity(KERNEL_ETAS.len());
    for &eta in &KERNEL_ETAS {
        let v = complex_time_oracle(p, dq, Complex64::new(eta, t), mode, quad)?;
        re.push((eta, v.re));
        im.push((eta, v.im));
    }
    let re = richardson_extrapolate(&re, 1)?;
    let im = richardson_extrapolate(&im, 1)?;
    Ok(Complex64::new(re.value, im.value))
}

/// The plane-wave integral at complex time with `Re τ > 0`.
pub fn complex_time_oracle(p: &PhysParams, dq: f64, tau: Complex64, mode: OracleMode, quad: &Quadratures) -> Result<ComplexValue> {
    if !(tau.re > 0.0) {
        return Err(Error::domain("complex_time_oracle", format!("Re tau must be > 0, got {tau}")));
    }
    let PhysParams { hbar, m, alpha, .. } = *p;
    let k_max = k_cutoff(p, tau.re);
    let weight = |k: f64| -> Complex64 {
        match mode {
            OracleMode::FullExponent => (-dispersion(p, k) * tau / hbar).exp(),
            OracleMode::Truncated => {
                let k2 = k * k;
                (-hbar * k2 * tau / (2.0 * m)).exp() * (1.0 - alpha * hbar.powi(3) * k2 * k2 * tau / m)
            }
        }
    };
    let re = integrate(|k| (k * dq).cos() * weight(k).re, 0.0, k_max, quad)?;
    let im = integrate(|k| (k * dq).cos() * weight(k).im, 0.0, k_max, quad)?;
    Ok(Complex64::new(re.value, im.value) / PI)
}

/// `Ĝ₀` as the numerical Laplace transform of the Euclidean closed form.
///
/// Refused at coincident points: there the O(α) term behaves as τ^{−3/2}
/// and its transform diverges at τ → 0⁺. The closed form's value at Δq = 0
/// is the Δq → 0 limit, not a convergent integral.
pub fn free_green_oracle(p: &PhysParams, q: &PropagatorQuery, quad: &Quadratures) -> Result<f64> {
    let eps = q.epsilon("free_green_oracle")?;
    let dq = q.q_f - q.q_0;
    if dq == 0.0 {
        return Err(Error::Divergence {
            endpoint: "tau -> 0+",
            detail: "coincident points: the O(alpha) term of G0 grows like tau^-3/2".into(),
        });
    }
    laplace_forward(|tau| euclidean_closed(p, dq, tau), eps, quad)
}

/// Half-width beyond which the full-exponent propagator is below e^{-70}.
fn spread(p: &PhysParams, tau: f64) -> f64 {
    12.0 * (p.hbar * tau / p.m).sqrt() + 12.0 * (p.alpha * p.hbar.powi(3) * tau / p.m).powf(0.25)
}

fn oracle_inner(quad: &Quadratures) -> Quadratures {
    Quadratures {
        rel_tol: quad.rel_tol.min(1e-11),
        abs_tol: quad.abs_tol.max(1e-13),
        ..*quad
    }
}

/// Integrates a fallible integrand, returning the first error it raised.
fn integrate_fallible<F>(f: F, a: f64, b: f64, quad: &Quadratures) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure = std::cell::RefCell::new(None);
    let est = integrate(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        a,
        b,
        quad,
    )?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(est.value),
    }
}

/// `|∫dq G(q_f, q; τ₁) G(q, q_0; τ₂) − G(q_f, q_0; τ₁+τ₂)|`, relative, with
/// every propagator from the full-exponent oracle.
pub fn semigroup_residual(p: &PhysParams, q_f: f64, q_0: f64, tau1: f64, tau2: f64, quad: &Quadratures) -> Result<f64> {
    let inner = oracle_inner(quad);
    let g = |dq: f64, tau: f64| oracle_real(p, dq, tau, OracleMode::FullExponent, &inner);
    let reach = spread(p, tau1.max(tau2));
    let lhs = integrate_fallible(
        |x| Ok(g(q_f - x, tau1)? * g(x - q_0, tau2)?),
        q_f.min(q_0) - reach,
        q_f.max(q_0) + reach,
        quad,
    )?;
    let rhs = g(q_f - q_0, tau1 + tau2)?;
    Ok((lhs - rhs).abs() / rhs.abs())
}

/// `|∫dq_f G(q_f, q_0; τ) − 1|` for the full-exponent oracle.
pub fn normalization_residual(p: &PhysParams, q_0: f64, tau: f64, quad: &Quadratures) -> Result<f64> {
    let inner = oracle_inner(quad);
    let reach = spread(p, tau);
    let total = integrate_fallible(
        |x| oracle_real(p, x - q_0, tau, OracleMode::FullExponent, &inner),
        q_0 - reach,
        q_0 + reach,
        quad,
    )?;
    Ok((total - 1.0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn textbook_euclidean(dq: f64, tau: f64) -> f64 {
        let gauss = dq * dq / (2.0 * tau);
        (1.0 / (2.0 * PI * tau)).sqrt() * (-gauss).exp()
    }

    #[test]
    fn dispersion_values() {
        assert_eq!(dispersion(&PhysParams::natural(0.0, -1.0), 0.0), 0.0);
        assert_eq!(dispersion(&PhysParams::natural(0.0, -1.0), 1.0), 0.5);
        assert_relative_eq!(dispersion(&PhysParams::natural(0.01, -1.0), 1.0), 0.51, max_relative = 1e-15);
    }

    #[test]
    fn euclidean_reduces_to_textbook_bitwise() {
        let p = PhysParams::natural(0.0, -1.0);
        for &dq in &[0.0, 0.5, 1.0, 2.0] {
            for &tau in &[0.5, 1.0, 2.0] {
                let q = PropagatorQuery::euclidean(dq, 0.0, tau).unwrap();
                assert_eq!(free_euclidean(&p, &q).unwrap(), textbook_euclidean(dq, tau));
            }
        }
        let q = PropagatorQuery::euclidean(0.0, 0.0, 1.0).unwrap();
        assert_relative_eq!(free_euclidean(&p, &q).unwrap(), 0.398_942_280_401_432_7, max_relative = 1e-15);
    }

    #[test]
    fn euclidean_symmetric() {
        let p = PhysParams::natural(1e-3, -1.0);
        let a = free_euclidean(&p, &PropagatorQuery::euclidean(1.3, -0.4, 0.7).unwrap()).unwrap();
        let b = free_euclidean(&p, &PropagatorQuery::euclidean(-0.4, 1.3, 0.7).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_phase_convention() {
        let p = PhysParams::natural(0.0, -1.0);
        let k = free_kernel(&p, &PropagatorQuery::real(0.0, 0.0, 1.0).unwrap()).unwrap();
        let expect = Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), -PI / 4.0);
        assert_relative_eq!(k.re, expect.re, max_relative = 1e-15);
        assert_relative_eq!(k.im, expect.im, max_relative = 1e-15);
    }

    #[test]
    fn complex_form_matches_real_form() {
        let p = PhysParams::natural(1e-3, -1.0);
        let real = euclidean_closed(&p, 0.8, 1.3);
        let cplx = euclidean_closed_complex(&p, 0.8, Complex64::new(1.3, 0.0));
        assert_relative_eq!(real, cplx.re, max_relative = 1e-14);
        assert!(cplx.im.abs() < 1e-16);
    }

    #[test]
    fn kernel_is_continued_euclidean() {
        let p = PhysParams::natural(1e-3, -1.0);
        let k = free_kernel(&p, &PropagatorQuery::real(0.3, -0.7, 1.7).unwrap()).unwrap();
        let c = euclidean_closed_complex(&p, 1.0, Complex64::new(0.0, 1.7));
        assert_eq!(k, c);
    }

    #[test]
    fn green_at_alpha_zero() {
        let p = PhysParams::natural(0.0, -1.0);
        let q = PropagatorQuery::energy(0.0, 0.0, 0.5).unwrap();
        assert_eq!(free_green(&p, &q).unwrap(), 1.0);
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let g = free_green(&p, &PropagatorQuery::energy(i as f64 * 0.5, 0.0, 0.5).unwrap()).unwrap();
            assert!(g < prev);
            prev = g;
        }
        assert!(prev < 1e-10);
    }

    #[test]
    fn oracle_matches_gaussian_at_alpha_zero() {
        let p = PhysParams::natural(0.0, -1.0);
        let quad = Quadratures::default();
        for mode in [OracleMode::FullExponent, OracleMode::Truncated] {
            let q = PropagatorQuery::euclidean(1.0, 0.0, 1.0).unwrap();
            let o = euclidean_oracle(&p, &q, mode, &quad).unwrap();
            assert_relative_eq!(o, free_euclidean(&p, &q).unwrap(), max_relative = 1e-10);
        }
    }

    #[test]
    fn full_minus_truncated_is_second_order() {
        let quad = Quadratures { rel_tol: 1e-13, ..Quadratures::default() };
        let q = PropagatorQuery::euclidean(1.0, 0.0, 1.0).unwrap();
        let gap = |alpha: f64| {
            let p = PhysParams::natural(alpha, -1.0);
            euclidean_oracle(&p, &q, OracleMode::FullExponent, &quad).unwrap()
                - euclidean_oracle(&p, &q, OracleMode::Truncated, &quad).unwrap()
        };
        let ratio = gap(1e-3) / gap(5e-4);
        assert!((ratio - 4.0).abs() < 0.1, "ratio {ratio}");
    }

    #[test]
    fn green_oracle_refuses_coincident_points() {
        let p = PhysParams::natural(1e-3, -1.0);
        let q = PropagatorQuery::energy(0.5, 0.5, 1.0).unwrap();
        let err = free_green_oracle(&p, &q, &Quadratures::default()).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
    }

    #[test]
    fn green_oracle_exact_at_alpha_zero() {
        let p = PhysParams::natural(0.0, -1.0);
        let q = PropagatorQuery::energy(1.0, 0.0, 1.0).unwrap();
        let o = free_green_oracle(&p, &q, &Quadratures::default()).unwrap();
        assert_relative_eq!(o, free_green(&p, &q).unwrap(), max_relative = 1e-9);
    }

    #[test]
    fn kernel_oracle_at_alpha_zero() {
        let p = PhysParams::natural(0.0, -1.0);
        let q = PropagatorQuery::real(1.0, 0.0, 1.0).unwrap();
        let o = kernel_oracle(&p, &q, OracleMode::FullExponent, &Quadratures::default()).unwrap();
        let k = free_kernel(&p, &q).unwrap();
        assert!((o - k).norm() / k.norm() < 1e-6, "{o} vs {k}");
    }

    #[test]
    fn normalization_and_semigroup() {
        let p = PhysParams::natural(1e-2, -1.0);
        let quad = Quadratures::default();
        assert!(normalization_residual(&p, 0.3, 1.0, &quad).unwrap() < 1e-8);
        assert!(semigroup_residual(&p, 1.0, 0.0, 0.3, 0.7, &quad).unwrap() < 1e-6);
    }
}
