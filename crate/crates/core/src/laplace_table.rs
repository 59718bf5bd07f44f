//! Inverse-Laplace pairs of `e^{−a√ε}/(√ε + b)` and its relatives.
//!
//! Every time-domain side contains `E(τ) = e^{ab + b²τ} erfc(a/2√τ + b√τ)`,
//! evaluated here as `erfcx(z)·e^{−a²/4τ}` when `z ≥ 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::erf::{erfc_unchecked, erfcx_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableEntry {
    /// `e^{−a√ε}/(√ε + b)`
    Plain,
    /// `ε^{−1/2} e^{−a√ε}/(√ε + b)`
    InverseRoot,
    /// `ε^{1/2} e^{−a√ε}/(√ε + b)`
    Root,
    /// `ε e^{−a√ε}/(√ε + b)`
    Linear,
    /// `e^{−a√ε}/(√ε + b)²`
    Squared,
}

impl TableEntry {
    pub const ALL: [TableEntry; 5] = [
        TableEntry::Plain,
        TableEntry::InverseRoot,
        TableEntry::Root,
        TableEntry::Linear,
        TableEntry::Squared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableEntry::Plain => "plain",
            TableEntry::InverseRoot => "inverse-root",
            TableEntry::Root => "root",
            TableEntry::Linear => "linear",
            TableEntry::Squared => "squared",
        }
    }

    /// The energy-domain side at complex ε.
    pub fn transform(self, a: f64, b: f64, eps: Complex64) -> Complex64 {
        let s = eps.sqrt();
        let base = (-a * s).exp() / (s + b);
        match self {
            TableEntry::Plain => base,
            TableEntry::InverseRoot => base / s,
            TableEntry::Root => base * s,
            TableEntry::Linear => base * eps,
            TableEntry::Squared => base / (s + b),
        }
    }

    /// The time-domain side at `τ > 0`.
    pub fn time_domain(self, a: f64, b: f64, tau: f64) -> f64 {
        let st = tau.sqrt();
        let gauss = (-a * a / (4.0 * tau)).exp();
        let z = a / (2.0 * st) + b * st;
        let e = if z >= 0.0 {
            erfcx_unchecked(z) * gauss
        } else {
            (a * b + b * b * tau).exp() * erfc_unchecked(z)
        };
        match self {
            TableEntry::Plain => gauss / (PI * tau).sqrt() - b * e,
            TableEntry::InverseRoot => e,
            TableEntry::Root => (a - 2.0 * b * tau) / (2.0 * (PI * tau.powi(3)).sqrt()) * gauss + b * b * e,
            TableEntry::Linear => {
                (4.0 * b * b * tau * tau - 2.0 * (a * b + 1.0) * tau + a * a) / (4.0 * (PI * tau.powi(5)).sqrt()) * gauss
                    - b.powi(3) * e
            }
            TableEntry::Squared => -2.0 * b * (tau / PI).sqrt() * gauss + (2.0 * b * b * tau + a * b + 1.0) * e,
        }
    }
}
