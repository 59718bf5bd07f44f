//! Path-integral side of the point interaction.
//!
//! The energy-domain Green's function solves the Laplace-transformed
//! integral equation; its pole and residue give the bound state. Time-domain
//! propagators come from the inverse-transform table and are evaluated with
//! `erfcx` so that the erfc × growing-exponential products stay finite.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{euclidean_closed, green_closed};
use crate::numerics::erf::{erfc_unchecked, erfcx_unchecked};
use crate::numerics::quad::{integrate, integrate_to_infinity, Quadratures};
use crate::numerics::roots::newton_root;
use crate::params::{flag_correction, PhysParams};
use crate::schrodinger::{bc_residual_with, BcResidual, BoundState, Method, PiecewiseExponential};

/// Half-width of the band around the pole in which Green's functions are
/// not evaluated.
pub const NEAR_POLE_GUARD: f64 = 1e-8;

/// Tolerance on `|D(ε)|` for the pole search.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Argument of a point-interaction Green's function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GreenArg {
    Energy(f64),
    Time(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaGreenQuery {
    pub q_f: f64,
    pub q_0: f64,
    pub arg: GreenArg,
}

impl DeltaGreenQuery {
    pub fn energy(q_f: f64, q_0: f64, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::domain("delta green query", format!("epsilon must be > 0, got {epsilon}")));
        }
        Self::checked(q_f, q_0, GreenArg::Energy(epsilon))
    }

    pub fn time(q_f: f64, q_0: f64, tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::domain("delta green query", format!("tau must be > 0, got {tau}")));
        }
        Self::checked(q_f, q_0, GreenArg::Time(tau))
    }

    fn checked(q_f: f64, q_0: f64, arg: GreenArg) -> Result<Self> {
        if !(q_f.is_finite() && q_0.is_finite()) {
            return Err(Error::Argument("end points must be finite".into()));
        }
        Ok(DeltaGreenQuery { q_f, q_0, arg })
    }

    /// `|q_f| + |q_0|`.
    pub fn image_distance(&self) -> f64 {
        self.q_f.abs() + self.q_0.abs()
    }

    fn epsilon(&self, op: &'static str) -> Result<f64> {
        match self.arg {
            GreenArg::Energy(e) => Ok(e),
            GreenArg::Time(_) => Err(Error::Argument(format!("{op} needs an energy argument"))),
        }
    }

    fn tau(&self, op: &'static str) -> Result<f64> {
        match self.arg {
            GreenArg::Time(t) => Ok(t),
            GreenArg::Energy(_) => Err(Error::Argument(format!("{op} needs a Euclidean time"))),
        }
    }
}

/// Free part and point-interaction correction of a Green's function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenParts {
    pub free: f64,
    pub correction: f64,
}

impl GreenParts {
    pub fn total(&self) -> f64 {
        self.free + self.correction
    }
}

/// Bound-state pole of the energy-domain Green's function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleResult {
    pub epsilon_pole: f64,
    /// `−ℏ·epsilon_pole`.
    pub energy: f64,
    /// Residue of `ΔĜ(0, 0; ε)` at the pole.
    pub residue: f64,
    /// Exponent of the residue's spatial dependence at the pole.
    pub decay_from_residue: f64,
    /// `D(epsilon_pole)`.
    pub denominator: f64,
    pub iterations: usize,
}

/// Which energy-domain expression to continue to complex ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GreenForm {
    /// Resummed denominator `ℏ/v + √(m/2ℏε)(1 + 6αℏmε)`.
    Closed,
    /// Expanded to first order in α around the α = 0 pole.
    Expanded,
}

/// `√(m/2ℏε)(1 + 6αℏmε)`, the coincident-point value of `Ĝ₀`.
fn g_amp(p: &PhysParams, eps: f64) -> f64 {
    (p.m / (2.0 * p.hbar * eps)).sqrt() * (1.0 + p.alpha * 6.0 * p.hbar * p.m * eps)
}

/// `√(2mε/ℏ)(1 + 2αℏmε)`, the decay rate of `Ĝ₀` in `|Δq|`.
fn kappa(p: &PhysParams, eps: f64) -> f64 {
    (2.0 * p.m * eps / p.hbar).sqrt() * (1.0 + p.alpha * 2.0 * p.hbar * p.m * eps)
}

/// The α = 0 pole `mv²/2ℏ³`.
pub fn alpha_zero_pole(p: &PhysParams) -> f64 {
    p.m * p.v * p.v / (2.0 * p.hbar.powi(3))
}

/// `D(ε) = ℏ/v + √(m/2ℏε)(1 + 6αℏmε)`.
pub fn denominator(p: &PhysParams, eps: f64) -> f64 {
    p.hbar / p.v + g_amp(p, eps)
}

/// `D′(ε)`, analytic.
pub fn denominator_derivative(p: &PhysParams, eps: f64) -> f64 {
    let c = (p.m / (2.0 * p.hbar)).sqrt();
    let s = p.alpha * 6.0 * p.hbar * p.m;
    c * (-0.5 * eps.powf(-1.5) * (1.0 + s * eps) + s / eps.sqrt())
}

/// `N(ε) = (m/2ℏε)(1 + 6αℏmε)²`.
fn numerator(p: &PhysParams, eps: f64) -> f64 {
    let g = g_amp(p, eps);
    g * g
}

fn guard(p: &PhysParams, eps: f64, pole: Option<f64>) -> Result<()> {
    match pole {
        Some(pole) if (eps - pole).abs() <= NEAR_POLE_GUARD => Err(Error::NearPole {
            epsilon: eps,
            pole,
            guard: NEAR_POLE_GUARD,
        }),
        _ => {
            let _ = p;
            Ok(())
        }
    }
}

/// `ΔĜ` with the resummed denominator, written as `−v g² e^{−κQ}/(ℏ + v g)`
/// so that the v → 0 limit is regular.
fn closed_correction(p: &PhysParams, eps: f64, big_q: f64) -> f64 {
    let g = g_amp(p, eps);
    -p.v * g * g * (-kappa(p, eps) * big_q).exp() / (p.hbar + p.v * g)
}

/// `Ĝ = Ĝ₀ + ΔĜ` with the resummed denominator.
pub fn delta_green_closed(p: &PhysParams, q: &DeltaGreenQuery) -> Result<GreenParts> {
    p.validate()?;
    let eps = q.epsilon("delta_green_closed")?;
    let pole = if p.v < 0.0 { Some(find_pole(p)?.0) } else { None };
    guard(p, eps, pole)?;
    flag_correction("delta_green_closed", p.alpha * 6.0 * p.hbar * p.m * eps, 1.0);
    Ok(GreenParts {
        free: green_closed(p, (q.q_f - q.q_0).abs(), eps),
        correction: closed_correction(p, eps, q.image_distance()),
    })
}

/// `ΔĜ = −(v/ℏ) Ĝ₀(q_f, 0) Ĝ₀(0, q_0) / [1 + (v/ℏ) Ĝ₀(0, 0)]`, built from
/// the free Green's function.
pub fn delta_green_solved(p: &PhysParams, q: &DeltaGreenQuery) -> Result<GreenParts> {
    p.validate()?;
    let eps = q.epsilon("delta_green_solved")?;
    let r = p.v / p.hbar;
    let g_f0 = green_closed(p, q.q_f.abs(), eps);
    let g_00 = green_closed(p, q.q_0.abs(), eps);
    let g_zero = green_closed(p, 0.0, eps);
    Ok(GreenParts {
        free: green_closed(p, (q.q_f - q.q_0).abs(), eps),
        correction: -r * g_f0 * g_00 / (1.0 + r * g_zero),
    })
}

/// Relative residual of `ΔĜ(q_f, q_0) = −(v/ℏ) Ĝ₀(q_f, 0) Ĝ(0, q_0)` for
/// the resummed form.
pub fn integral_equation_residual(p: &PhysParams, q: &DeltaGreenQuery) -> Result<f64> {
    let eps = q.epsilon("integral_equation_residual")?;
    let lhs = closed_correction(p, eps, q.image_distance());
    let g_0q = green_closed(p, q.q_0.abs(), eps) + closed_correction(p, eps, q.q_0.abs());
    let rhs = -(p.v / p.hbar) * green_closed(p, q.q_f.abs(), eps) * g_0q;
    let scale = lhs.abs().max(rhs.abs());
    Ok(if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale })
}

fn expanded_correction(p: &PhysParams, eps: f64, big_q: f64) -> f64 {
    let PhysParams { hbar, m, alpha, v } = *p;
    let k0 = (2.0 * m * eps / hbar).sqrt();
    let d0 = v / hbar + (2.0 * hbar * eps / m).sqrt();
    let ame = alpha * hbar * m * eps;
    let bracket = (1.0 + 12.0 * ame - 2.0 * ame * k0 * big_q) / d0 - 6.0 * alpha * v * m * eps / (d0 * d0);
    -(v / hbar) * (m / (2.0 * hbar * eps)).sqrt() * (-k0 * big_q).exp() * bracket
}

/// `ΔĜ` expanded to first order in α.
///
/// The expansion is about the α = 0 pole, so the guard band sits at
/// `mv²/2ℏ³` and the pole is double.
pub fn delta_green_expanded(p: &PhysParams, q: &DeltaGreenQuery) -> Result<GreenParts> {
    p.validate()?;
    let eps = q.epsilon("delta_green_expanded")?;
    let pole = if p.v < 0.0 { Some(alpha_zero_pole(p)) } else { None };
    guard(p, eps, pole)?;
    Ok(GreenParts {
        free: green_closed(p, (q.q_f - q.q_0).abs(), eps),
        correction: expanded_correction(p, eps, q.image_distance()),
    })
}

/// `ΔĜ` continued to complex ε (principal square roots), for contour
/// inversion.
pub fn delta_green_complex(p: &PhysParams, big_q: f64, eps: Complex64, form: GreenForm) -> Complex64 {
    let PhysParams { hbar, m, alpha, v } = *p;
    match form {
        GreenForm::Closed => {
            let g = (m / (2.0 * hbar * eps)).sqrt() * (1.0 + alpha * 6.0 * hbar * m * eps);
            let k = (2.0 * m * eps / hbar).sqrt() * (1.0 + alpha * 2.0 * hbar * m * eps);
            -v * g * g * (-k * big_q).exp() / (hbar + v * g)
        }
        GreenForm::Expanded => {
            let k0 = (2.0 * m * eps / hbar).sqrt();
            let d0 = v / hbar + (2.0 * hbar * eps / m).sqrt();
            let ame = alpha * hbar * m * eps;
            let bracket = (1.0 + 12.0 * ame - 2.0 * ame * k0 * big_q) / d0 - 6.0 * alpha * v * m * eps / (d0 * d0);
            -(v / hbar) * (m / (2.0 * hbar * eps)).sqrt() * (-k0 * big_q).exp() * bracket
        }
    }
}

/// `e^{X} erfc(z)` with `X = z² − w`, evaluated without overflow.
fn scaled_erfc(z: f64, w: f64) -> f64 {
    if z >= 0.0 {
        erfcx_unchecked(z) * (-w).exp()
    } else {
        (z * z - w).exp() * erfc_unchecked(z)
    }
}

/// Time-domain correction `ΔG(Q; τ)` with `Q = |q_f| + |q_0|`.
pub(crate) fn time_correction(p: &PhysParams, big_q: f64, tau: f64) -> f64 {
    let PhysParams { hbar, m, alpha, v } = *p;
    let h2 = hbar * hbar;
    let c = m * v / h2;
    let st = tau.sqrt();
    let z = (m / (2.0 * hbar)).sqrt() * (big_q / st + v * st / hbar);
    let w = m * big_q * big_q / (2.0 * hbar * tau);
    let erfc_term = scaled_erfc(z, w);
    let m3v3 = m.powi(3) * v.powi(3);
    let bracket = 1.0
        + alpha
            * (12.0 * m * m * v * v / h2 + 4.0 * m3v3 * big_q / (h2 * h2) + 3.0 * m3v3 * v * tau / (h2 * h2 * hbar));
    let mvq = m * v * big_q / h2;
    let poly = -3.0 * m3v3 * st / (h2 * h2) - (m * m * v / hbar) * (9.0 + mvq) / st
        + m * m * big_q * (7.0 + mvq) / (tau * st)
        - (m.powi(3) * big_q.powi(3) / hbar) / (tau * tau * st);
    let gauss = if alpha == 0.0 {
        0.0
    } else {
        (2.0 * hbar / (PI * m)).sqrt() * alpha * (-w).exp() * poly
    };
    -(c / 2.0) * (erfc_term * bracket + gauss)
}

/// Euclidean propagator `G = G₀ + ΔG` of the point interaction.
pub fn delta_propagator_time(p: &PhysParams, q: &DeltaGreenQuery) -> Result<GreenParts> {
    p.validate()?;
    let tau = q.tau("delta_propagator_time")?;
    Ok(GreenParts {
        free: euclidean_closed(p, q.q_f - q.q_0, tau),
        correction: time_correction(p, q.image_distance(), tau),
    })
}

/// α = 0 correction from the image representation,
/// `ΔG = −(mv/ℏ²) ∫_0^∞ dz e^{−(mv/ℏ²)z} G_F(|q_f|, −|q_0| − z; τ)`.
pub fn image_form_correction(p: &PhysParams, q: &DeltaGreenQuery, quad: &Quadratures) -> Result<f64> {
    p.validate()?;
    if p.alpha != 0.0 {
        return Err(Error::Argument("the image representation holds at alpha = 0 only".into()));
    }
    let tau = q.tau("image_form_correction")?;
    let c = p.m * p.v / (p.hbar * p.hbar);
    let big_q = q.image_distance();
    let norm = (p.m / (2.0 * PI * p.hbar * tau)).sqrt();
    let est = integrate_to_infinity(
        |z| {
            let d = big_q + z;
            norm * (-c * z - p.m * d * d / (2.0 * p.hbar * tau)).exp()
        },
        0.0,
        quad,
    )?;
    Ok(-c * est.value)
}

/// Relative residual of
/// `ΔG(q_f, q_0; τ) = −(v/ℏ) ∫_0^τ ds G₀(q_f, 0; τ−s) G(0, q_0; s)`.
pub fn schwinger_residual(p: &PhysParams, q: &DeltaGreenQuery, quad: &Quadratures) -> Result<f64> {
    let tau = q.tau("schwinger_residual")?;
    let lhs = time_correction(p, q.image_distance(), tau);
    let integrand = |s: f64| {
        if s <= 0.0 || s >= tau {
            return 0.0;
        }
        let g0 = euclidean_closed(p, q.q_f, tau - s);
        let g = euclidean_closed(p, q.q_0, s) + time_correction(p, q.q_0.abs(), s);
        g0 * g
    };
    let est = integrate(integrand, 0.0, tau, quad)?;
    let rhs = -(p.v / p.hbar) * est.value;
    Ok((lhs - rhs).abs() / lhs.abs().max(rhs.abs()))
}

/// Path-integral boundary condition,
/// `jump[ψ′] − 4αℏ²·jump[ψ‴] = (2mv/ℏ²)ψ(0)`.
pub fn bc_residual_pathintegral(p: &PhysParams, psi: &PiecewiseExponential) -> BcResidual {
    bc_residual_with(p, psi, 4.0)
}

/// Energy and decay constant of the path-integral bound state.
pub fn pathintegral_closed_form(p: &PhysParams) -> (f64, f64) {
    let PhysParams { hbar, m, alpha, v } = *p;
    let h2 = hbar * hbar;
    let energy = -m * v * v / (2.0 * h2) - alpha * 3.0 * m.powi(3) * v.powi(4) / (h2 * h2);
    let decay = -m * v / h2 - alpha * 4.0 * m.powi(3) * v.powi(3) / (h2 * h2);
    (energy, decay)
}

/// Newton root of `D` from the α = 0 pole; returns the root and the
/// iteration count.
fn find_pole(p: &PhysParams) -> Result<(f64, usize)> {
    p.require_bound()?;
    let seed = alpha_zero_pole(p);
    let count = std::cell::Cell::new(0usize);
    let root = newton_root(
        |e| {
            count.set(count.get() + 1);
            if e <= 0.0 {
                f64::NAN
            } else {
                denominator(p, e)
            }
        },
        |e| denominator_derivative(p, e),
        seed,
        POLE_TOLERANCE,
    )?;
    Ok((root, count.get().saturating_sub(1)))
}

/// Locates the bound-state pole and the residue there.
pub fn pole(p: &PhysParams) -> Result<PoleResult> {
    let (eps, iterations) = find_pole(p)?;
    let d_prime = denominator_derivative(p, eps);
    Ok(PoleResult {
        epsilon_pole: eps,
        energy: -p.hbar * eps,
        residue: -numerator(p, eps) / d_prime,
        decay_from_residue: kappa(p, eps),
        denominator: denominator(p, eps),
        iterations,
    })
}

/// Bound state read off the pole of the resummed Green's function.
pub fn bound_state_from_pole(p: &PhysParams) -> Result<(PoleResult, BoundState)> {
    let pr = pole(p)?;
    flag_correction("bound_state_from_pole", 4.0 * p.coupling_alpha(), 1.0);
    let state = BoundState {
        energy: pr.energy,
        wavefunction: PiecewiseExponential::normalized(pr.decay_from_residue)?,
        method: Method::PathIntegral,
    };
    Ok((pr, state))
}

/// Roots of `D` on `(0, upper]`, counted as sign changes on a logarithmic
/// grid of `points` samples starting at `upper·1e-8`.
pub fn count_poles(p: &PhysParams, upper: f64, points: usize) -> Result<usize> {
    p.validate()?;
    if !(upper > 0.0) || points < 2 {
        return Err(Error::Argument("pole scan needs upper > 0 and at least 2 points".into()));
    }
    let lo = upper * 1e-8;
    let ratio = (upper / lo).powf(1.0 / (points - 1) as f64);
    let mut prev = denominator(p, lo).signum();
    let mut count = 0;
    let mut e = lo;
    for _ in 1..points {
        e *= ratio;
        let s = denominator(p, e.min(upper)).signum();
        if s != prev {
            count += 1;
        }
        prev = s;
    }
    Ok(count)
}

/// Pole of the expanded form, from its Laurent coefficients at the α = 0
/// pole: `ΔĜ ≈ c₂/(ε−ε₀)² + c₁/(ε−ε₀)` is read as a single pole shifted by
/// `c₂/c₁`. Returns the shifted pole and `c₁`.
pub fn expanded_pole(p: &PhysParams) -> Result<(f64, f64)> {
    p.require_bound()?;
    let e0 = alpha_zero_pole(p);
    let h = 1e-4 * e0;
    let f = |e: f64| expanded_correction(p, e, 0.0) * (e - e0).powi(2);
    let (fp, fm) = (f(e0 + h), f(e0 - h));
    let (fp2, fm2) = (f(e0 + 2.0 * h), f(e0 - 2.0 * h));
    // Fourth-order central stencils for the value and slope at ε₀.
    let c2 = (4.0 * (fp + fm) - (fp2 + fm2)) / 6.0;
    let c1 = (8.0 * (fp - fm) - (fp2 - fm2)) / (12.0 * h);
    Ok((e0 + c2 / c1, c1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::laplace::laplace_forward;
    use crate::numerics::talbot::{talbot_inverse, TalbotSpec};
    use crate::schrodinger::{bc_residual_schrodinger, bound_state_schrodinger};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn natural(alpha: f64) -> PhysParams {
        PhysParams::natural(alpha, -1.0)
    }

    #[test]
    fn closed_value_at_alpha_zero() {
        let q = DeltaGreenQuery::energy(0.0, 0.0, 1.0).unwrap();
        let g = delta_green_closed(&natural(0.0), &q).unwrap();
        assert_relative_eq!(g.correction, 1.0 / (2.0 - 2f64.sqrt()), max_relative = 1e-14);
    }

    #[test]
    fn closed_equals_solved() {
        for &alpha in &[0.0, 1e-3, 1e-2] {
            for &(qf, q0, eps) in &[(0.0, 0.0, 1.0), (1.0, -0.5, 0.3), (-2.0, 1.0, 2.0)] {
                let p = natural(alpha);
                let q = DeltaGreenQuery::energy(qf, q0, eps).unwrap();
                let a = delta_green_closed(&p, &q).unwrap();
                let b = delta_green_solved(&p, &q).unwrap();
                assert_relative_eq!(a.correction, b.correction, max_relative = 1e-13);
                assert!(integral_equation_residual(&p, &q).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn free_limit_is_linear_in_v() {
        let q = DeltaGreenQuery::energy(0.5, 0.5, 1.0).unwrap();
        let at = |v: f64| delta_green_closed(&PhysParams::natural(1e-3, v), &q).unwrap().correction;
        assert_eq!(at(0.0), 0.0);
        let ratio = at(2e-6) / at(1e-6);
        assert!((ratio - 2.0).abs() < 1e-5);
    }

    #[test]
    fn near_pole_refused() {
        let p = natural(0.0);
        let q = DeltaGreenQuery::energy(0.0, 0.0, 0.5 + 1e-9).unwrap();
        assert!(matches!(delta_green_closed(&p, &q), Err(Error::NearPole { .. })));
        assert!(matches!(delta_green_expanded(&p, &q), Err(Error::NearPole { .. })));
    }

    #[test]
    fn expanded_equals_closed_at_alpha_zero() {
        let p = natural(0.0);
        let q = DeltaGreenQuery::energy(1.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(
            delta_green_closed(&p, &q).unwrap().correction,
            delta_green_expanded(&p, &q).unwrap().correction,
            max_relative = 1e-14
        );
    }

    #[test]
    fn expanded_differs_at_second_order() {
        let q = DeltaGreenQuery::energy(1.0, 1.0, 1.0).unwrap();
        let gap = |a: f64| {
            let p = natural(a);
            delta_green_closed(&p, &q).unwrap().correction - delta_green_expanded(&p, &q).unwrap().correction
        };
        let ratio = gap(1e-3) / gap(5e-4);
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn complex_forms_agree_on_real_axis() {
        let p = natural(1e-3);
        for form in [GreenForm::Closed, GreenForm::Expanded] {
            let c = delta_green_complex(&p, 2.0, Complex64::new(1.3, 0.0), form);
            let r = match form {
                GreenForm::Closed => closed_correction(&p, 1.3, 2.0),
                GreenForm::Expanded => expanded_correction(&p, 1.3, 2.0),
            };
            assert_relative_eq!(c.re, r, max_relative = 1e-13);
        }
    }

    #[test]
    fn time_domain_at_alpha_zero_matches_erfc_form() {
        let p = natural(0.0);
        for &(big_q, tau) in &[(2.0, 1.0), (0.5, 0.2), (3.0, 4.0)] {
            let c: f64 = -1.0;
            let direct = -(c / 2.0)
                * (c * (big_q - tau / 2.0)).exp()
                * erfc_unchecked((0.5f64).sqrt() * (big_q / tau.sqrt() - tau.sqrt()));
            assert_relative_eq!(time_correction(&p, big_q, tau), direct, max_relative = 1e-13);
        }
    }

    #[test]
    fn time_domain_stays_finite_for_strong_coupling() {
        let p = PhysParams::natural(0.0, -40.0);
        let v = time_correction(&p, 2.0, 1e-3);
        assert!(v.is_finite());
        let p = PhysParams::natural(0.0, 40.0);
        assert!(time_correction(&p, 2.0, 1.0).is_finite());
    }

    #[test]
    fn image_form_at_alpha_zero() {
        let quad = Quadratures::default();
        for &v in &[-1.0, 1.0] {
            let p = PhysParams::natural(0.0, v);
            let q = DeltaGreenQuery::time(1.0, -1.0, 1.0).unwrap();
            let img = image_form_correction(&p, &q, &quad).unwrap();
            let erfc_form = delta_propagator_time(&p, &q).unwrap().correction;
            assert_relative_eq!(img, erfc_form, max_relative = 1e-9);
        }
        assert!(image_form_correction(&natural(1e-3), &DeltaGreenQuery::time(1.0, 1.0, 1.0).unwrap(), &quad).is_err());
    }

    #[test]
    fn forward_transform_general_units() {
        // The table must hold for every ℏ, m, not just natural units.
        let quad = Quadratures::default();
        for &v in &[0.9, -0.9] {
            let p = PhysParams::new(0.7, 1.3, 2e-3, v).unwrap();
            for &eps in &[2.5, 4.0] {
                let lt = laplace_forward(|t| time_correction(&p, 2.0, t), eps, &quad).unwrap();
                let ex = expanded_correction(&p, eps, 2.0);
                assert_relative_eq!(lt, ex, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn contour_inversion_matches_time_domain() {
        let p = natural(1e-3);
        let spec = TalbotSpec::default().with_shift(alpha_zero_pole(&p));
        for &tau in &[0.5, 1.0, 2.0] {
            let t = talbot_inverse(|e| delta_green_complex(&p, 2.0, e, GreenForm::Expanded), tau, &spec).unwrap();
            assert_relative_eq!(t, time_correction(&p, 2.0, tau), max_relative = 1e-8);
        }
    }

    #[test]
    fn schwinger_identity_at_alpha_zero() {
        let q = DeltaGreenQuery::time(1.0, 1.0, 1.0).unwrap();
        let r = schwinger_residual(&natural(0.0), &q, &Quadratures::default()).unwrap();
        assert!(r < 1e-9, "{r:e}");
    }

    #[test]
    fn schwinger_identity_first_order() {
        // With α in the exponent of G₀ the short-time end of the convolution
        // is not uniformly first order; the residual is ~1.4·10³ α².
        let q = DeltaGreenQuery::time(1.0, 1.0, 1.0).unwrap();
        let quad = Quadratures::default();
        let r1 = schwinger_residual(&natural(1e-3), &q, &quad).unwrap();
        let r2 = schwinger_residual(&natural(5e-4), &q, &quad).unwrap();
        assert_relative_eq!(r1, 1.416_567_620_866_8e-3, max_relative = 1e-6);
        assert!((r1 / r2 - 3.5).abs() < 0.2, "{r1:e} {r2:e}");
    }

    #[test]
    fn pole_at_alpha_zero() {
        let (pr, s) = bound_state_from_pole(&natural(0.0)).unwrap();
        assert_relative_eq!(pr.energy, -0.5, max_relative = 1e-12);
        assert_relative_eq!(s.decay(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(pr.residue, 1.0, max_relative = 1e-12);
        assert_eq!(s.method, Method::PathIntegral);
    }

    #[test]
    fn pole_is_a_root() {
        for &alpha in &[1e-4, 1e-3, 1e-2] {
            let pr = pole(&natural(alpha)).unwrap();
            assert!(pr.denominator.abs() <= 1e-10);
            assert!(pr.residue > 0.0);
        }
    }

    #[test]
    fn pole_energy_agrees_with_closed_form_to_first_order() {
        let shift = |alpha: f64| {
            let p = natural(alpha);
            pole(&p).unwrap().energy - pathintegral_closed_form(&p).0
        };
        // Leading mismatch is second order.
        let ratio = shift(1e-3) / shift(5e-4);
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn residue_first_order_coefficient() {
        // N/|D′| at the pole grows as 1 + 12α, three times the growth of a′.
        let r = |alpha: f64| pole(&natural(alpha)).unwrap().residue;
        let slope = (r(1e-5) - r(0.0)) / 1e-5;
        assert!((slope - 12.0).abs() < 0.01, "{slope}");
    }

    #[test]
    fn single_pole_in_window() {
        for &alpha in &[0.0, 1e-4, 1e-3, 1e-2] {
            let p = natural(alpha);
            assert_eq!(count_poles(&p, 4.0 * alpha_zero_pole(&p), 4000).unwrap(), 1);
        }
        assert_eq!(count_poles(&PhysParams::natural(1e-3, 1.0), 2.0, 1000).unwrap(), 0);
    }

    #[test]
    fn expanded_pole_matches_closed_form() {
        let gap = |alpha: f64| {
            let p = natural(alpha);
            -expanded_pole(&p).unwrap().0 - pathintegral_closed_form(&p).0
        };
        let ratio = gap(1e-3) / gap(5e-4);
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
        assert!(gap(1e-3).abs() < 50.0 * 1e-6);
    }

    #[test]
    fn boundary_conditions_cross() {
        let alpha = 1e-3;
        let p = natural(alpha);
        let (_, a_prime) = pathintegral_closed_form(&p);
        let phi = bound_state_schrodinger(&p).unwrap().wavefunction;
        let big_phi = PiecewiseExponential::normalized(a_prime).unwrap();
        assert!(bc_residual_pathintegral(&p, &big_phi).relative.abs() < 50.0 * alpha * alpha);
        let off = bc_residual_pathintegral(&p, &phi).relative;
        assert_relative_eq!(off, 2.0 * alpha, max_relative = 0.05);
        let off = bc_residual_schrodinger(&p, &big_phi).relative;
        assert_relative_eq!(off.abs(), 2.0 * alpha, max_relative = 0.05);
    }

    #[test]
    fn boundary_conditions_coincide_at_alpha_zero() {
        let p = natural(0.0);
        let psi = PiecewiseExponential::new(0.7, 1.9).unwrap();
        assert_eq!(bc_residual_pathintegral(&p, &psi), bc_residual_schrodinger(&p, &psi));
    }

    proptest! {
        #[test]
        fn depends_on_moduli_and_is_symmetric(qf in -3.0f64..3.0, q0 in -3.0f64..3.0, eps in 0.7f64..3.0, tau in 0.1f64..3.0) {
            let p = natural(1e-3);
            let a = delta_green_closed(&p, &DeltaGreenQuery::energy(qf, q0, eps).unwrap()).unwrap().correction;
            let b = delta_green_closed(&p, &DeltaGreenQuery::energy(-q0, qf, eps).unwrap()).unwrap().correction;
            prop_assert_eq!(a, b);
            let a = delta_propagator_time(&p, &DeltaGreenQuery::time(qf, q0, tau).unwrap()).unwrap();
            let b = delta_propagator_time(&p, &DeltaGreenQuery::time(q0, -qf, tau).unwrap()).unwrap();
            prop_assert_eq!(a.correction, b.correction);
        }

        #[test]
        fn integral_equation(qf in -3.0f64..3.0, q0 in -3.0f64..3.0, eps in 0.05f64..5.0, alpha in 0.0f64..1e-2) {
            let p = natural(alpha);
            prop_assume!((eps - pole(&p).unwrap().epsilon_pole).abs() > 1e-3);
            let q = DeltaGreenQuery::energy(qf, q0, eps).unwrap();
            prop_assert!(integral_equation_residual(&p, &q).unwrap() <= 1e-12);
        }
    }
}
