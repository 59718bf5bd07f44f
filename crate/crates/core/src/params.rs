//! Physical parameters and propagator arguments shared by every module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex amplitude of the real-time kernel.
pub type ComplexValue = num_complex::Complex64;

/// Fraction of the leading term above which a first-order correction is
/// reported as outside the regime where the closed forms can be trusted.
pub const SMALL_ALPHA_THRESHOLD: f64 = 0.2;

/// Physical context: reduced Planck constant, mass, GUP parameter and the
/// strength of the point interaction `v δ(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    pub hbar: f64,
    pub m: f64,
    /// GUP parameter, dimension (momentum)^-2.
    pub alpha: f64,
    /// Coupling of the δ-potential (energy × length). Attractive for v < 0.
    pub v: f64,
}

impl Default for PhysParams {
    fn default() -> Self {
        PhysParams {
            hbar: 1.0,
            m: 1.0,
            alpha: 0.01,
            v: -1.0,
        }
    }
}

impl PhysParams {
    pub fn new(hbar: f64, m: f64, alpha: f64, v: f64) -> Result<Self> {
        let p = PhysParams { hbar, m, alpha, v };
        p.validate()?;
        Ok(p)
    }

    /// Natural units ℏ = m = 1.
    pub fn natural(alpha: f64, v: f64) -> Self {
        PhysParams {
            hbar: 1.0,
            m: 1.0,
            alpha,
            v,
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        PhysParams { alpha, ..self }
    }

    pub fn with_v(self, v: f64) -> Self {
        PhysParams { v, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(Error::Argument(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.m.is_finite() && self.m > 0.0) {
            return Err(Error::Argument(format!("mass must be positive, got {}", self.m)));
        }
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(Error::Argument(format!(
                "alpha must be non-negative, got {}",
                self.alpha
            )));
        }
        if !self.v.is_finite() {
            return Err(Error::Argument(format!("coupling must be finite, got {}", self.v)));
        }
        Ok(())
    }

    /// Dimensionless strength of the GUP correction at the bound-state
    /// momentum scale, α m² v² / ℏ².
    pub fn coupling_alpha(&self) -> f64 {
        self.alpha * self.m * self.m * self.v * self.v / (self.hbar * self.hbar)
    }

    pub(crate) fn require_bound(&self) -> Result<()> {
        self.validate()?;
        if self.v < 0.0 {
            Ok(())
        } else {
            Err(Error::NoBoundState { v: self.v })
        }
    }
}

/// Logs a warning when a first-order correction stops being small.
pub(crate) fn flag_correction(op: &str, correction: f64, leading: f64) {
    if leading != 0.0 {
        let ratio = (correction / leading).abs();
        if ratio > SMALL_ALPHA_THRESHOLD {
            log::warn!(
                "{op}: O(alpha) correction is {:.1}% of the leading term; first-order result is unreliable",
                100.0 * ratio
            );
        }
    }
}

/// The time argument of a propagator query.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeArg {
    /// Euclidean time τ > 0.
    Euclidean(f64),
    /// Real time T ≠ 0.
    Real(f64),
    /// Energy parameter ε = E/ℏ > 0 of the Laplace-transformed propagator.
    Energy(f64),
}

/// End points and time argument of a propagator evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagatorQuery {
    pub q_f: f64,
    pub q_0: f64,
    pub time: TimeArg,
}

impl PropagatorQuery {
    pub fn euclidean(q_f: f64, q_0: f64, tau: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::domain("euclidean query", format!("tau must be > 0, got {tau}")));
        }
        Self::checked(q_f, q_0, TimeArg::Euclidean(tau))
    }

    pub fn real(q_f: f64, q_0: f64, t: f64) -> Result<Self> {
        if !t.is_finite() || t == 0.0 {
            return Err(Error::domain("real-time query", format!("T must be non-zero, got {t}")));
        }
        Self::checked(q_f, q_0, TimeArg::Real(t))
    }

    pub fn energy(q_f: f64, q_0: f64, epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::domain(
                "energy query",
                format!("epsilon must be > 0, got {epsilon}"),
            ));
        }
        Self::checked(q_f, q_0, TimeArg::Energy(epsilon))
    }

    fn checked(q_f: f64, q_0: f64, time: TimeArg) -> Result<Self> {
        if !(q_f.is_finite() && q_0.is_finite()) {
            return Err(Error::Argument("end points must be finite".into()));
        }
        Ok(PropagatorQuery { q_f, q_0, time })
    }

    /// |q_f − q_0|.
    pub fn separation(&self) -> f64 {
        (self.q_f - self.q_0).abs()
    }

    /// |q_f| + |q_0|, the combination entering the point-interaction terms.
    pub fn image_distance(&self) -> f64 {
        self.q_f.abs() + self.q_0.abs()
    }

    pub(crate) fn tau(&self, op: &'static str) -> Result<f64> {
        match self.time {
            TimeArg::Euclidean(tau) if tau > 0.0 => Ok(tau),
            TimeArg::Euclidean(tau) => Err(Error::domain(op, format!("tau must be > 0, got {tau}"))),
            other => Err(Error::Argument(format!("{op} needs a Euclidean time, got {other:?}"))),
        }
    }

    pub(crate) fn real_time(&self, op: &'static str) -> Result<f64> {
        match self.time {
            TimeArg::Real(t) if t != 0.0 => Ok(t),
            TimeArg::Real(_) => Err(Error::domain(op, "T = 0")),
            other => Err(Error::Argument(format!("{op} needs a real time, got {other:?}"))),
        }
    }

    pub(crate) fn epsilon(&self, op: &'static str) -> Result<f64> {
        match self.time {
            TimeArg::Energy(e) if e > 0.0 => Ok(e),
            TimeArg::Energy(e) => Err(Error::domain(op, format!("epsilon must be > 0, got {e}"))),
            other => Err(Error::Argument(format!("{op} needs an energy argument, got {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unphysical_parameters() {
        assert!(PhysParams::new(0.0, 1.0, 0.0, -1.0).is_err());
        assert!(PhysParams::new(1.0, -1.0, 0.0, -1.0).is_err());
        assert!(PhysParams::new(1.0, 1.0, -1e-3, -1.0).is_err());
        assert!(PhysParams::new(1.0, 1.0, 0.0, f64::NAN).is_err());
        assert!(PhysParams::new(1.0, 1.0, 0.0, 2.0).is_ok());
    }

    #[test]
    fn query_time_kinds_are_exclusive() {
        let q = PropagatorQuery::euclidean(1.0, 0.0, 0.5).unwrap();
        assert_eq!(q.tau("t").unwrap(), 0.5);
        assert!(q.epsilon("t").is_err());
        assert!(q.real_time("t").is_err());
        assert!(PropagatorQuery::euclidean(0.0, 0.0, 0.0).is_err());
        assert!(PropagatorQuery::real(0.0, 0.0, 0.0).is_err());
        assert!(PropagatorQuery::energy(0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn bound_requires_attraction() {
        assert!(PhysParams::natural(0.0, -1.0).require_bound().is_ok());
        assert!(matches!(
            PhysParams::natural(0.0, 0.0).require_bound(),
            Err(Error::NoBoundState { .. })
        ));
    }
}
