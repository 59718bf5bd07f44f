//! Side-by-side comparison of the bound states, verification suites and
//! output formats.

pub mod config;
pub mod emit;
pub mod suite;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::PhysParams;
use crate::pathintegral::{bc_residual_pathintegral, bound_state_from_pole, pathintegral_closed_form, PoleResult};
use crate::schrodinger::{bc_residual_schrodinger, bound_state_schrodinger, schrodinger_closed_form, BcResidual, BoundState};
use crate::spectral::bound_state_spectral;

pub use config::{Config, Tolerances};
pub use emit::{emit, render, AlphaGridTable, Cell, Format, Tabular};
pub use suite::{run_suite, verify_laplace_table, Check, Suite, SuiteOutcome};

/// Always attached to a report.
pub const REARRANGEMENT_CAVEAT: &str = "Only the single pole of the first-order resummed denominator is used; \
     a rearrangement of the denominator that admits multiple bound states is out of scope.";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub energy: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Deltas {
    /// `B − B′`.
    pub energy_gap: f64,
    /// `a′ − a`.
    pub decay_gap: f64,
}

impl Deltas {
    pub fn between(schrodinger: &BoundState, path_integral: &BoundState) -> Deltas {
        Deltas {
            energy_gap: schrodinger.energy - path_integral.energy,
            decay_gap: path_integral.decay() - schrodinger.decay(),
        }
    }
}

/// First-order closed forms, for reference next to the computed states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedForms {
    pub schrodinger_energy: f64,
    pub schrodinger_decay: f64,
    pub path_integral_energy: f64,
    pub path_integral_decay: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub params: PhysParams,
    pub schrodinger: BoundState,
    /// Read off the pole of the resummed Green's function.
    pub path_integral: BoundState,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectral: Option<SpectralEstimate>,
    pub deltas: Deltas,
    /// Rows: Schrödinger wavefunction, path-integral wavefunction.
    /// Columns: Schrödinger condition, path-integral condition.
    pub bc_matrix: [[BcResidual; 2]; 2],
    pub pole: PoleResult,
    pub closed_forms: ClosedForms,
    pub caveats: Vec<String>,
}

impl ComparisonReport {
    /// Gaps recomputed from the embedded bound states.
    pub fn recomputed_deltas(&self) -> Deltas {
        Deltas::between(&self.schrodinger, &self.path_integral)
    }
}

/// Builds the comparison of the Schrödinger and path-integral bound states.
pub fn compare_bound_states(p: &PhysParams, with_spectral: bool, config: &Config) -> Result<ComparisonReport> {
    let schrodinger = bound_state_schrodinger(p)?;
    let (pole, path_integral) = bound_state_from_pole(p)?;
    let spectral = if with_spectral {
        let (limit, _) = bound_state_spectral(p, &config.sigmas, &config.grid)?;
        Some(SpectralEstimate {
            energy: limit.energy,
            error_estimate: limit.error_estimate,
        })
    } else {
        None
    };
    let bc_matrix = [schrodinger, path_integral].map(|s| {
        [
            bc_residual_schrodinger(p, &s.wavefunction),
            bc_residual_pathintegral(p, &s.wavefunction),
        ]
    });
    let (schrodinger_energy, schrodinger_decay) = schrodinger_closed_form(p);
    let (path_integral_energy, path_integral_decay) = pathintegral_closed_form(p);

    let mut caveats = vec![REARRANGEMENT_CAVEAT.to_string()];
    let strength = p.coupling_alpha();
    if 4.0 * strength > crate::params::SMALL_ALPHA_THRESHOLD {
        caveats.push(format!(
            "alpha m^2 v^2 / hbar^2 = {strength}: first-order corrections are not small and the closed forms are unreliable."
        ));
    }
    Ok(ComparisonReport {
        params: *p,
        deltas: Deltas::between(&schrodinger, &path_integral),
        schrodinger,
        path_integral,
        spectral,
        bc_matrix,
        pole,
        closed_forms: ClosedForms {
            schrodinger_energy,
            schrodinger_decay,
            path_integral_energy,
            path_integral_decay,
        },
        caveats,
    })
}

/// One row of an α scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaGridRow {
    pub alpha: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "B_prime")]
    pub b_prime: f64,
    #[serde(rename = "spectral_E")]
    pub spectral_e: Option<f64>,
    pub spectral_err: Option<f64>,
    /// `B − B′`.
    pub gap: f64,
}

/// `n` evenly spaced values from `lo` to `hi` inclusive, parsed from
/// `lo:hi:n`.
pub fn parse_alpha_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Argument(format!("alpha grid '{spec}' must look like lo:hi:n"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || !(lo >= 0.0) || !(hi >= lo) || (n == 1 && hi != lo) {
        return Err(Error::Argument(format!(
            "alpha grid '{spec}' needs 0 <= lo <= hi and n >= 1 (n = 1 only when lo = hi)"
        )));
    }
    Ok((0..n)
        .map(|i| if n == 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect())
}

/// Compares the bound states at each α of a scan.
pub fn compare_alpha_grid(p: &PhysParams, alphas: &[f64], with_spectral: bool, config: &Config) -> Result<AlphaGridTable> {
    let rows = alphas
        .par_iter()
        .map(|&alpha| {
            let r = compare_bound_states(&p.with_alpha(alpha), with_spectral, config)?;
            Ok(AlphaGridRow {
                alpha,
                b: r.schrodinger.energy,
                b_prime: r.path_integral.energy,
                spectral_e: r.spectral.map(|s| s.energy),
                spectral_err: r.spectral.map(|s| s.error_estimate),
                gap: r.deltas.energy_gap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlphaGridTable(rows))
}
