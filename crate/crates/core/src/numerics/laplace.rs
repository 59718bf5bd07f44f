//! Forward numerical Laplace transform.

use super::quad::{integrate, Quadratures};
use crate::error::{Error, Result};

/// Log-slope margin: growth faster than `τ^{-1+δ}` near zero counts as
/// divergent.
pub const DIVERGENCE_MARGIN: f64 = 0.05;

const ORIGIN_PROBES: [f64; 4] = [1e-8, 1e-10, 1e-12, 1e-14];
const TAIL_PROBES: [f64; 3] = [50.0, 100.0, 200.0];

/// `∫_0^∞ f(τ) e^{−ετ} dτ`.
///
/// The range is split at τ = 1. The head uses `τ = u²` to soften
/// inverse square-root endpoints and the tail uses `τ = 1/u`. Before
/// integrating, `f` is probed near both ends and a [`Error::Divergence`]
/// is returned when the integrand is not integrable there.
pub fn laplace_forward<F: Fn(f64) -> f64>(f: F, epsilon: f64, quad: &Quadratures) -> Result<f64> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain("laplace_forward", format!("epsilon must be > 0, got {epsilon}")));
    }
    probe_origin(&f)?;
    probe_tail(&f, epsilon)?;

    let head = integrate(
        |u: f64| {
            let tau = u * u;
            if tau == 0.0 {
                0.0
            } else {
                2.0 * u * f(tau) * (-epsilon * tau).exp()
            }
        },
        0.0,
        1.0,
        quad,
    )?;
    let tail = integrate(
        |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let w = (-epsilon / u).exp();
            if w == 0.0 {
                0.0
            } else {
                f(1.0 / u) * w / (u * u)
            }
        },
        0.0,
        1.0,
        quad,
    )?;
    Ok(head.value + tail.value)
}

fn probe_origin<F: Fn(f64) -> f64>(f: &F) -> Result<()> {
    let mut prev: Option<(f64, f64)> = None;
    for &tau in &ORIGIN_PROBES {
        let y = f(tau);
        if !y.is_finite() {
            return Err(Error::Divergence {
                endpoint: "tau -> 0+",
                detail: format!("integrand is {y} at tau = {tau:e}"),
            });
        }
        if y == 0.0 {
            prev = None;
            continue;
        }
        let point = (tau.ln(), y.abs().ln());
        if let Some((lt, ly)) = prev {
            let slope = (point.1 - ly) / (point.0 - lt);
            if slope < -1.0 + DIVERGENCE_MARGIN {
                return Err(Error::Divergence {
                    endpoint: "tau -> 0+",
                    detail: format!("integrand grows like tau^{slope:.3} near tau = {tau:e}"),
                });
            }
        }
        prev = Some(point);
    }
    Ok(())
}

fn probe_tail<F: Fn(f64) -> f64>(f: &F, epsilon: f64) -> Result<()> {
    let mut prev: Option<(f64, f64)> = None;
    for &c in &TAIL_PROBES {
        let tau = c / epsilon;
        let y = f(tau);
        if y.is_nan() || y.is_infinite() {
            return Err(Error::Divergence {
                endpoint: "tau -> infinity",
                detail: format!("integrand is {y} at tau = {tau:e}"),
            });
        }
        if y == 0.0 {
            prev = None;
            continue;
        }
        let point = (tau.ln(), y.abs().ln() - epsilon * tau);
        if let Some((lt, ly)) = prev {
            let slope = (point.1 - ly) / (point.0 - lt);
            if slope > -1.0 - DIVERGENCE_MARGIN {
                return Err(Error::Divergence {
                    endpoint: "tau -> infinity",
                    detail: format!(
                        "damped integrand decays like tau^{slope:.3} at tau = {tau:e}; epsilon lies at or left of a singularity"
                    ),
                });
            }
        }
        prev = Some(point);
    }
    Ok(())
}
