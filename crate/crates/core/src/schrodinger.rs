//! Schrödinger side of the point interaction: the derivative-jump boundary
//! condition and its bound state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{flag_correction, PhysParams};

/// `ψ(q) = amplitude · e^{−decay·|q|}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseExponential {
    pub amplitude: f64,
    pub decay: f64,
}

impl PiecewiseExponential {
    pub fn new(amplitude: f64, decay: f64) -> Result<Self> {
        if !(decay > 0.0 && decay.is_finite()) || !amplitude.is_finite() {
            return Err(Error::Argument(format!(
                "piecewise exponential needs finite amplitude and decay > 0, got ({amplitude}, {decay})"
            )));
        }
        Ok(PiecewiseExponential { amplitude, decay })
    }

    /// The unit-norm member with the given decay, amplitude `√decay`.
    pub fn normalized(decay: f64) -> Result<Self> {
        Self::new(decay.max(0.0).sqrt(), decay)
    }

    pub fn eval(&self, q: f64) -> f64 {
        self.amplitude * (-self.decay * q.abs()).exp()
    }

    /// `∫ψ² dq = amplitude²/decay`.
    pub fn norm_squared(&self) -> f64 {
        self.amplitude * self.amplitude / self.decay
    }
}

/// Which construction produced a bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Schrodinger,
    PathIntegral,
    Spectral,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Schrodinger => "schrodinger",
            Method::PathIntegral => "path-integral",
            Method::Spectral => "spectral",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schrodinger" => Ok(Method::Schrodinger),
            "path-integral" => Ok(Method::PathIntegral),
            "spectral" => Ok(Method::Spectral),
            other => Err(Error::Argument(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub energy: f64,
    pub wavefunction: PiecewiseExponential,
    pub method: Method,
}

impl BoundState {
    pub fn decay(&self) -> f64 {
        self.wavefunction.decay
    }
}

/// Two sides of a boundary condition at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BcResidual {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// `residual / max(|lhs|, |rhs|)`, zero when both sides vanish.
    pub relative: f64,
}

impl BcResidual {
    fn from_sides(lhs: f64, rhs: f64) -> Self {
        let residual = lhs - rhs;
        let scale = lhs.abs().max(rhs.abs());
        let relative = if scale == 0.0 { 0.0 } else { residual / scale };
        BcResidual {
            lhs,
            rhs,
            residual,
            relative,
        }
    }
}

/// `ψ^{(n)}(0⁺) − ψ^{(n)}(0⁻) = −2A·aⁿ` for odd `n ∈ {1, 3}`.
pub fn jump_calculus(psi: &PiecewiseExponential, derivative_order: u32) -> Result<f64> {
    match derivative_order {
        1 | 3 => Ok(-2.0 * psi.amplitude * psi.decay.powi(derivative_order as i32)),
        n => Err(Error::Argument(format!("jump of derivative order {n} is not supported"))),
    }
}

/// `jump[ψ′] − c·αℏ²·jump[ψ‴]` against `(2mv/ℏ²)ψ(0)`.
pub(crate) fn bc_residual_with(p: &PhysParams, psi: &PiecewiseExponential, c: f64) -> BcResidual {
    let j1 = -2.0 * psi.amplitude * psi.decay;
    let j3 = -2.0 * psi.amplitude * psi.decay.powi(3);
    let lhs = j1 - c * p.alpha * p.hbar * p.hbar * j3;
    let rhs = 2.0 * p.m * p.v / (p.hbar * p.hbar) * psi.eval(0.0);
    BcResidual::from_sides(lhs, rhs)
}

/// Boundary condition of the fourth-order Schrödinger equation,
/// `jump[ψ′] − 2αℏ²·jump[ψ‴] = (2mv/ℏ²)ψ(0)`.
pub fn bc_residual_schrodinger(p: &PhysParams, psi: &PiecewiseExponential) -> BcResidual {
    bc_residual_with(p, psi, 2.0)
}

/// Energy and decay constant of the Schrödinger bound state.
pub fn schrodinger_closed_form(p: &PhysParams) -> (f64, f64) {
    let PhysParams { hbar, m, alpha, v } = *p;
    let h2 = hbar * hbar;
    let energy = -m * v * v / (2.0 * h2) - alpha * m.powi(3) * v.powi(4) / (h2 * h2);
    let decay = -m * v / h2 - alpha * 2.0 * m.powi(3) * v.powi(3) / (h2 * h2);
    (energy, decay)
}

/// The normalized bound state `√a·e^{−a|q|}` of the attractive well.
pub fn bound_state_schrodinger(p: &PhysParams) -> Result<BoundState> {
    p.require_bound()?;
    let (energy, decay) = schrodinger_closed_form(p);
    flag_correction("bound_state_schrodinger", 2.0 * p.coupling_alpha(), 1.0);
    Ok(BoundState {
        energy,
        wavefunction: PiecewiseExponential::normalized(decay)?,
        method: Method::Schrodinger,
    })
}

/// `|a − √(−2mB)(1 − 2αmB)/ℏ|`, which vanishes to first order in α.
pub fn decay_identity_residual(p: &PhysParams, state: &BoundState) -> f64 {
    let b = state.energy;
    let alt = (-2.0 * p.m * b).sqrt() * (1.0 - 2.0 * p.alpha * p.m * b) / p.hbar;
    (state.decay() - alt).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn jumps() {
        let psi = PiecewiseExponential::new(1.0, 1.0).unwrap();
        assert_eq!(jump_calculus(&psi, 1).unwrap(), -2.0);
        assert_eq!(jump_calculus(&psi, 3).unwrap(), -2.0);
        let psi = PiecewiseExponential::new(1.0, 2.0).unwrap();
        assert_eq!(jump_calculus(&psi, 3).unwrap(), -16.0);
        assert!(jump_calculus(&psi, 2).is_err());
    }

    #[test]
    fn textbook_well() {
        let s = bound_state_schrodinger(&PhysParams::natural(0.0, -1.0)).unwrap();
        assert_eq!(s.energy, -0.5);
        assert_eq!(s.decay(), 1.0);
        assert_eq!(s.method, Method::Schrodinger);
    }

    #[test]
    fn first_order_values() {
        let s = bound_state_schrodinger(&PhysParams::natural(0.01, -1.0)).unwrap();
        assert_relative_eq!(s.energy, -0.51, max_relative = 1e-14);
        assert_relative_eq!(s.decay(), 1.02, max_relative = 1e-14);
    }

    #[test]
    fn repulsive_has_no_bound_state() {
        assert!(matches!(
            bound_state_schrodinger(&PhysParams::natural(0.0, 1.0)),
            Err(Error::NoBoundState { .. })
        ));
    }

    #[test]
    fn bc_exact_at_alpha_zero() {
        let p = PhysParams::natural(0.0, -1.0);
        let s = bound_state_schrodinger(&p).unwrap();
        let r = bc_residual_schrodinger(&p, &s.wavefunction);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn bc_residual_second_order() {
        for &alpha in &[1e-4, 1e-3, 1e-2] {
            let p = PhysParams::natural(alpha, -1.0);
            let s = bound_state_schrodinger(&p).unwrap();
            let r = bc_residual_schrodinger(&p, &s.wavefunction).relative.abs();
            // Leading term is 12α²; the tolerance leaves room for O(α³).
            assert!(r <= 13.0 * alpha * alpha, "alpha {alpha}: {r:e}");
            let half = PhysParams::natural(alpha / 2.0, -1.0);
            let sh = bound_state_schrodinger(&half).unwrap();
            let rh = bc_residual_schrodinger(&half, &sh.wavefunction).relative.abs();
            assert!((r / rh - 4.0).abs() < 0.5, "ratio {}", r / rh);
        }
    }

    #[test]
    fn slope_in_alpha_is_exact() {
        let p0 = PhysParams::new(0.8, 1.7, 0.0, -1.3).unwrap();
        let alpha = 3e-3;
        let b0 = bound_state_schrodinger(&p0).unwrap().energy;
        let b1 = bound_state_schrodinger(&p0.with_alpha(alpha)).unwrap().energy;
        let expect = -p0.m.powi(3) * p0.v.powi(4) / p0.hbar.powi(4);
        assert_relative_eq!((b1 - b0) / alpha, expect, max_relative = 1e-10);
    }

    proptest! {
        #[test]
        fn normalized_states(hbar in 0.3f64..3.0, m in 0.3f64..3.0, v in -3.0f64..-0.1, alpha in 0.0f64..1e-3) {
            let p = PhysParams::new(hbar, m, alpha, v).unwrap();
            let s = bound_state_schrodinger(&p).unwrap();
            prop_assert!((s.wavefunction.norm_squared() - 1.0).abs() <= 1e-12);
            prop_assert!(s.energy < 0.0);
        }

        #[test]
        fn textbook_limit(hbar in 0.3f64..3.0, m in 0.3f64..3.0, v in -3.0f64..-0.1) {
            let p = PhysParams::new(hbar, m, 0.0, v).unwrap();
            let s = bound_state_schrodinger(&p).unwrap();
            prop_assert_eq!(s.energy, -m * v * v / (2.0 * (hbar * hbar)));
        }

        #[test]
        fn decay_identity_holds_to_first_order(v in -2.0f64..-0.5, alpha in 1e-5f64..1e-3) {
            let p = PhysParams::natural(alpha, v);
            let s = bound_state_schrodinger(&p).unwrap();
            let r = decay_identity_residual(&p, &s);
            prop_assert!(r <= 10.0 * (alpha * v * v).powi(2) * v.abs(), "{}", r);
        }
    }
}
