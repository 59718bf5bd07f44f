//! Named verification suites. Each returns its checks; failures are
//! recorded, never thrown.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::Config;
use crate::error::{Error, Result};
use crate::free::{
    euclidean_oracle, free_euclidean, free_green, free_kernel, normalization_residual, semigroup_residual,
    OracleMode,
};
use crate::laplace_table::TableEntry;
use crate::numerics::bessel::{bessel_k_half, verify_bessel_integral, HalfOrder};
use crate::numerics::erf::{erfc, erfcx};
use crate::numerics::laplace::laplace_forward;
use crate::numerics::talbot::{talbot_inverse, TalbotSpec};
use crate::params::{PhysParams, PropagatorQuery};
use crate::pathintegral::{
    alpha_zero_pole, bound_state_from_pole, count_poles, delta_green_closed, delta_green_complex,
    delta_green_expanded, delta_propagator_time, image_form_correction, integral_equation_residual,
    pathintegral_closed_form, schwinger_residual, DeltaGreenQuery, GreenForm,
};
use crate::schrodinger::{bc_residual_schrodinger, bound_state_schrodinger, PiecewiseExponential};
use crate::spectral::{alpha_slope, ground_state, rayleigh_quotient, GridSpec};

/// One measured quantity against its bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    /// `measured ≤ tolerance`; false when the measurement itself failed.
    pub pass: bool,
    /// Error text when the measurement could not be made.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            tolerance,
            pass: measured <= tolerance,
            detail: None,
        }
    }

    pub fn from_result(name: impl Into<String>, measured: Result<f64>, tolerance: f64) -> Self {
        match measured {
            Ok(m) => Check::new(name, m, tolerance),
            Err(e) => Check {
                name: name.into(),
                measured: f64::NAN,
                tolerance,
                pass: false,
                detail: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite_name: String,
    pub checks: Vec<Check>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Numerics,
    Free,
    DeltaSchrodinger,
    DeltaPathintegral,
    Spectral,
    LaplaceTable,
    All,
}

impl Suite {
    pub const COMPONENTS: [Suite; 6] = [
        Suite::Numerics,
        Suite::Free,
        Suite::DeltaSchrodinger,
        Suite::DeltaPathintegral,
        Suite::Spectral,
        Suite::LaplaceTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Numerics => "numerics",
            Suite::Free => "free",
            Suite::DeltaSchrodinger => "delta-schrodinger",
            Suite::DeltaPathintegral => "delta-pathintegral",
            Suite::Spectral => "spectral",
            Suite::LaplaceTable => "laplace-table",
            Suite::All => "all",
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::COMPONENTS
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::Argument(format!(
                    "unknown suite '{s}'; expected one of numerics, free, delta-schrodinger, \
                     delta-pathintegral, spectral, laplace-table, all"
                ))
            })
    }
}

/// Runs a suite. `all` runs the components concurrently and concatenates
/// them in the fixed component order.
pub fn run_suite(suite: Suite, config: &Config) -> SuiteOutcome {
    let checks = match suite {
        Suite::All => Suite::COMPONENTS
            .par_iter()
            .map(|s| component(*s, config))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect(),
        s => component(s, config),
    };
    SuiteOutcome {
        suite_name: suite.name().to_string(),
        checks,
    }
}

fn component(suite: Suite, config: &Config) -> Vec<Check> {
    let mut checks = match suite {
        Suite::Numerics => numerics_checks(config),
        Suite::Free => free_checks(config),
        Suite::DeltaSchrodinger => schrodinger_checks(config),
        Suite::DeltaPathintegral => pathintegral_checks(config),
        Suite::Spectral => spectral_checks(config),
        Suite::LaplaceTable => verify_laplace_table(config).checks,
        Suite::All => unreachable!("all is not a component"),
    };
    for c in &mut checks {
        c.name = format!("{}/{}", suite.name(), c.name);
    }
    checks
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(values: I) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
}

/// Ratio of a residual at α to the one at α/2.
fn shrink_check(name: String, at: impl Fn(f64) -> Result<f64>, alpha: f64, config: &Config) -> Check {
    let t = &config.tolerances;
    let ratio = at(alpha).and_then(|full| at(alpha / 2.0).map(|half| full / half));
    Check::from_result(name, ratio.map(|r| (r - t.scaling_ratio).abs()), t.scaling_band)
}

fn numerics_checks(config: &Config) -> Vec<Check> {
    let t = &config.tolerances;
    let mut out = Vec::new();

    let reflection = max_over((-120..=120).map(|i| {
        let x = i as f64 * 0.05;
        Ok((erfc(x)? + erfc(-x)? - 2.0).abs())
    }));
    out.push(Check::from_result("erfc-reflection", reflection, t.special_identity));

    let scaled = max_over((0..=100).map(|i| {
        let x = i as f64 * 0.05;
        Ok(rel(erfcx(x)? * (-x * x).exp(), erfc(x)?))
    }));
    out.push(Check::from_result("erfcx-identity", scaled, t.special_identity));

    // K_{3/2}(z) = K_{-1/2}(z) + K_{1/2}(z)/z.
    let recurrence = max_over([0.1, 0.5, 1.0, 2.0, 5.0, 20.0].iter().map(|&z| {
        let lower = bessel_k_half(HalfOrder::MinusHalf, z)? + bessel_k_half(HalfOrder::Half, z)? / z;
        Ok(rel(bessel_k_half(HalfOrder::ThreeHalves, z)?, lower))
    }));
    out.push(Check::from_result("bessel-recurrence", recurrence, t.special_identity));

    for &nu in &[0.5, 1.5] {
        for &beta in &[0.5, 1.0, 2.0] {
            for &gamma in &[0.5, 1.0, 2.0] {
                out.push(Check::from_result(
                    format!("bessel-integral(nu={nu},beta={beta},gamma={gamma})"),
                    verify_bessel_integral(nu, beta, gamma, &config.quadrature),
                    t.bessel_integral,
                ));
            }
        }
    }

    // The inner inversion only needs absolute accuracy well below the
    // round-trip bound; its own floor is ~1e-12 at large τ.
    let inner = TalbotSpec {
        abs_tol: config.talbot.abs_tol.max(1e-3 * t.talbot_roundtrip),
        ..config.talbot
    };
    for &eps in &[0.5, 1.0, 2.0] {
        let back = laplace_forward(
            |tau| talbot_inverse(|s| 1.0 / (s + 1.0), tau, &inner).unwrap_or(f64::NAN),
            eps,
            &config.quadrature,
        );
        out.push(Check::from_result(
            format!("talbot-roundtrip(eps={eps})"),
            back.map(|b| rel(b, 1.0 / (eps + 1.0))),
            t.talbot_roundtrip,
        ));
    }
    out
}

/// Forward and Talbot checks of the five inverse-Laplace pairs at `a = 1`;
/// each check covers `b ∈ {0.5, 1}`.
pub fn verify_laplace_table(config: &Config) -> SuiteOutcome {
    let t = &config.tolerances;
    let (a, bs) = (1.0, [0.5, 1.0]);
    let mut checks = Vec::new();
    for entry in TableEntry::ALL {
        for &eps in &[0.5, 1.0, 2.0] {
            let err = max_over(bs.iter().map(|&b| {
                let forward = laplace_forward(|tau| entry.time_domain(a, b, tau), eps, &config.quadrature)?;
                Ok(rel(forward, entry.transform(a, b, Complex64::new(eps, 0.0)).re))
            }));
            checks.push(Check::from_result(
                format!("{}/forward(eps={eps})", entry.name()),
                err,
                t.laplace_forward,
            ));
        }
        for &tau in &[0.5, 1.0, 2.0] {
            let err = max_over(bs.iter().map(|&b| {
                let inv = talbot_inverse(|s| entry.transform(a, b, s), tau, &config.talbot)?;
                Ok(rel(inv, entry.time_domain(a, b, tau)))
            }));
            checks.push(Check::from_result(
                format!("{}/talbot(tau={tau})", entry.name()),
                err,
                t.laplace_talbot,
            ));
        }
    }
    SuiteOutcome {
        suite_name: Suite::LaplaceTable.name().to_string(),
        checks,
    }
}

fn free_checks(config: &Config) -> Vec<Check> {
    let t = &config.tolerances;
    let quad = &config.quadrature;
    let mut out = Vec::new();

    for &alpha in &[0.0, 1e-3] {
        let p = PhysParams::natural(alpha, 0.0);
        for &(t1, t2) in &[(0.5, 0.5), (0.3, 0.7)] {
            out.push(Check::from_result(
                format!("semigroup(alpha={alpha},tau1={t1},tau2={t2})"),
                semigroup_residual(&p, 0.4, -0.3, t1, t2, quad),
                t.semigroup,
            ));
        }
        for &tau in &[0.5, 1.0, 2.0] {
            out.push(Check::from_result(
                format!("normalization(alpha={alpha},tau={tau})"),
                normalization_residual(&p, 0.2, tau, quad),
                t.normalization,
            ));
        }
    }

    let p = PhysParams::natural(1e-3, 0.0);
    let sym = max_over([(0.7, -0.2), (1.5, 0.3), (-2.0, 0.0)].iter().map(|&(a, b)| {
        let e = (free_euclidean(&p, &PropagatorQuery::euclidean(a, b, 0.8)?)?
            - free_euclidean(&p, &PropagatorQuery::euclidean(b, a, 0.8)?)?)
        .abs();
        let g = (free_green(&p, &PropagatorQuery::energy(a, b, 1.3)?)?
            - free_green(&p, &PropagatorQuery::energy(b, a, 1.3)?)?)
        .abs();
        let k = (free_kernel(&p, &PropagatorQuery::real(a, b, 0.9)?)?
            - free_kernel(&p, &PropagatorQuery::real(b, a, 0.9)?)?)
        .norm();
        Ok(e.max(g).max(k))
    }));
    out.push(Check::from_result("symmetry", sym, 0.0));

    let p0 = PhysParams::new(0.8, 1.7, 0.0, 0.0).expect("valid parameters");
    let (hbar, m) = (p0.hbar, p0.m);
    let textbook = max_over([0.0, 0.5, 1.0, 2.0].iter().flat_map(|&dq| {
        [0.5, 1.0, 2.0].into_iter().map(move |s| {
            let e = free_euclidean(&p0, &PropagatorQuery::euclidean(dq, 0.0, s)?)?;
            let e_ref = (m / (2.0 * PI * hbar * s)).sqrt() * (-m * dq * dq / (2.0 * hbar * s)).exp();
            let g = free_green(&p0, &PropagatorQuery::energy(dq, 0.0, s)?)?;
            let g_ref = (m / (2.0 * hbar * s)).sqrt() * (-(2.0 * m * s / hbar).sqrt() * dq).exp();
            let k = free_kernel(&p0, &PropagatorQuery::real(dq, 0.0, s)?)?;
            let it = Complex64::new(0.0, s);
            let k_ref = (m / (2.0 * PI * hbar * it)).sqrt() * (-(m * dq * dq) / (2.0 * hbar * it)).exp();
            Ok(rel(e, e_ref).max(rel(g, g_ref)).max((k - k_ref).norm() / k_ref.norm()))
        })
    }));
    out.push(Check::from_result("textbook-alpha0", textbook, t.textbook));

    for &alpha in &[0.0, 1e-4, 1e-3] {
        let p = PhysParams::natural(alpha, 0.0);
        for &dq in &[0.0, 0.5, 1.0, 2.0] {
            for &tau in &[0.5, 1.0, 2.0] {
                let err = PropagatorQuery::euclidean(dq, 0.0, tau).and_then(|q| {
                    let closed = free_euclidean(&p, &q)?;
                    let oracle = euclidean_oracle(&p, &q, OracleMode::Truncated, quad)?;
                    Ok((closed - oracle).abs() / oracle.abs())
                });
                out.push(Check::from_result(
                    format!("closed-vs-oracle(dq={dq},tau={tau},alpha={alpha})"),
                    err,
                    t.free_oracle,
                ));
            }
        }
    }
    out
}

fn schrodinger_checks(config: &Config) -> Vec<Check> {
    let t = &config.tolerances;
    let mut out = Vec::new();

    let norm = max_over([0.3, 1.0, 2.5].iter().map(|&a| {
        let psi = PiecewiseExponential::normalized(a)?;
        Ok((psi.norm_squared() - 1.0).abs())
    }));
    out.push(Check::from_result("wavefunction-norm", norm, t.wavefunction_norm));

    let exact = max_over([(1.0, 1.0, -1.0), (0.7, 1.3, -0.4), (1.9, 0.5, -2.2), (1.0, 2.0, -3.0)].iter().map(
        |&(hbar, m, v)| {
            let s = bound_state_schrodinger(&PhysParams::new(hbar, m, 0.0, v)?)?;
            Ok((s.energy - (-m * v * v / (2.0 * hbar * hbar))).abs())
        },
    ));
    out.push(Check::from_result("alpha0-energy-exact", exact, 0.0));

    let slope = max_over([(1.0, 1.0, -1.0), (0.7, 1.3, -0.4)].iter().map(|&(hbar, m, v)| {
        let alpha = 1e-3;
        let b0 = bound_state_schrodinger(&PhysParams::new(hbar, m, 0.0, v)?)?.energy;
        let b1 = bound_state_schrodinger(&PhysParams::new(hbar, m, alpha, v)?)?.energy;
        Ok(rel((b1 - b0) / alpha, -m.powi(3) * v.powi(4) / hbar.powi(4)))
    }));
    out.push(Check::from_result("first-order-slope", slope, t.textbook));

    let bc = |alpha: f64| -> Result<f64> {
        let p = PhysParams::natural(alpha, -1.0);
        let s = bound_state_schrodinger(&p)?;
        Ok(bc_residual_schrodinger(&p, &s.wavefunction).relative.abs())
    };
    for &alpha in &[1e-4, 1e-3, 1e-2] {
        out.push(Check::from_result(
            format!("bc-residual(alpha={alpha})"),
            bc(alpha),
            t.alpha_squared_factor * alpha * alpha,
        ));
        out.push(shrink_check(format!("bc-residual-scaling(alpha={alpha})"), bc, alpha, config));
    }
    out
}

fn pathintegral_checks(config: &Config) -> Vec<Check> {
    let t = &config.tolerances;
    let quad = &config.quadrature;
    let mut out = Vec::new();

    let ie = max_over([0.0, 1e-3, 1e-2].iter().flat_map(|&alpha| {
        [(0.0, 0.0, 1.0), (1.0, -0.5, 0.3), (-2.0, 1.0, 2.0), (0.5, 0.5, 0.8)]
            .into_iter()
            .map(move |(qf, q0, eps)| {
                integral_equation_residual(&PhysParams::natural(alpha, -1.0), &DeltaGreenQuery::energy(qf, q0, eps)?)
            })
    }));
    out.push(Check::from_result("integral-equation", ie, t.integral_equation));

    for &alpha in &[0.0, 1e-3] {
        let p = PhysParams::natural(alpha, -1.0);
        out.push(Check::from_result(
            format!("schwinger(alpha={alpha})"),
            DeltaGreenQuery::time(1.0, 1.0, 1.0).and_then(|q| schwinger_residual(&p, &q, quad)),
            t.schwinger,
        ));
    }

    for &alpha in &[0.0, 1e-3] {
        for check in delta_transform_checks(&PhysParams::natural(alpha, 1.0), &[0.5, 1.0, 2.0], config) {
            out.push(check);
        }
        for check in delta_transform_checks(&PhysParams::natural(alpha, -1.0), &[1.0, 2.0], config) {
            out.push(check);
        }
    }

    let p = PhysParams::natural(0.0, -1.0);
    for &tau in &[0.5, 1.0, 2.0] {
        let err = DeltaGreenQuery::time(1.0, 1.0, tau).and_then(|q| {
            Ok(rel(delta_propagator_time(&p, &q)?.correction, image_form_correction(&p, &q, quad)?))
        });
        out.push(Check::from_result(format!("image-form(tau={tau})"), err, t.image_form));
    }

    let p = PhysParams::natural(1e-3, -0.8);
    let sym = max_over([(0.7, -0.2, 1.3), (1.5, 0.3, 0.4)].iter().map(|&(a, b, x)| {
        let mut worst = 0.0f64;
        for (qa, qb) in [(b, a), (-a, b), (a, -b), (-a, -b)] {
            let e0 = delta_green_closed(&p, &DeltaGreenQuery::energy(a, b, x)?)?.correction;
            let e1 = delta_green_closed(&p, &DeltaGreenQuery::energy(qa, qb, x)?)?.correction;
            let t0 = delta_propagator_time(&p, &DeltaGreenQuery::time(a, b, x)?)?.correction;
            let t1 = delta_propagator_time(&p, &DeltaGreenQuery::time(qa, qb, x)?)?.correction;
            worst = worst.max((e0 - e1).abs()).max((t0 - t1).abs());
        }
        Ok(worst)
    }));
    out.push(Check::from_result("symmetry", sym, 0.0));

    for &alpha in &[0.0, 1e-4, 1e-3, 1e-2] {
        let p = PhysParams::natural(alpha, -1.0);
        let n = count_poles(&p, 4.0 * alpha_zero_pole(&p), config.pole_scan_points);
        out.push(Check::from_result(
            format!("pole-uniqueness(alpha={alpha})"),
            n.map(|n| (n as f64 - 1.0).abs()),
            0.0,
        ));
    }

    for &alpha in &[1e-4, 1e-3, 1e-2] {
        let bound = t.alpha_squared_factor * alpha * alpha;
        let p = PhysParams::natural(alpha, -1.0);
        let witness = (|| -> Result<(f64, f64)> {
            let s = bound_state_schrodinger(&p)?;
            let (_, pi) = bound_state_from_pole(&p)?;
            let (m, v, hbar) = (p.m, p.v, p.hbar);
            let gap = 2.0 * alpha * m.powi(3) * v.powi(4) / hbar.powi(4);
            let decay_gap = -2.0 * alpha * m.powi(3) * v.powi(3) / hbar.powi(4);
            // Relative to the α = 0 energy and decay scales.
            let energy_scale = m * v * v / (hbar * hbar);
            let decay_scale = m * v.abs() / (hbar * hbar);
            Ok((
                ((s.energy - pi.energy) - gap).abs() / energy_scale,
                ((pi.decay() - s.decay()) - decay_gap).abs() / decay_scale,
            ))
        })();
        let (energy_gap, decay_gap) = match witness {
            Ok((e, d)) => (Ok(e), Ok(d)),
            Err(e) => (Err(clone_err(&e)), Err(e)),
        };
        out.push(Check::from_result(format!("witness-energy-gap(alpha={alpha})"), energy_gap, bound));
        out.push(Check::from_result(format!("witness-decay-gap(alpha={alpha})"), decay_gap, bound));
        let pole_vs_closed = bound_state_from_pole(&p).map(|(_, s)| {
            let (b, _) = pathintegral_closed_form(&p);
            rel(s.energy, b)
        });
        out.push(Check::from_result(format!("pole-vs-closed(alpha={alpha})"), pole_vs_closed, bound));
    }
    out
}

fn clone_err(e: &Error) -> Error {
    Error::Argument(e.to_string())
}

/// Transform consistency of the point-interaction correction at
/// `|q_f| = |q_0| = 1`, forward at each ε and by Talbot at each τ.
pub fn delta_transform_checks(p: &PhysParams, epsilons: &[f64], config: &Config) -> Vec<Check> {
    let t = &config.tolerances;
    let big_q = 2.0;
    let tag = format!("alpha={},v={}", p.alpha, p.v);
    let mut out = Vec::new();
    for &eps in epsilons {
        let err = DeltaGreenQuery::energy(1.0, 1.0, eps).and_then(|q| {
            let target = delta_green_expanded(p, &q)?.correction;
            let forward = laplace_forward(
                |tau| {
                    DeltaGreenQuery::time(1.0, 1.0, tau)
                        .and_then(|q| delta_propagator_time(p, &q))
                        .map(|g| g.correction)
                        .unwrap_or(f64::NAN)
                },
                eps,
                &config.quadrature,
            )?;
            Ok(rel(forward, target))
        });
        out.push(Check::from_result(format!("delta-forward({tag},eps={eps})"), err, t.delta_transform));
    }
    let spec = if p.v < 0.0 {
        config.talbot.with_shift(alpha_zero_pole(p))
    } else {
        config.talbot
    };
    for &tau in &[0.5, 1.0, 2.0] {
        let err = DeltaGreenQuery::time(1.0, 1.0, tau).and_then(|q| {
            let target = delta_propagator_time(p, &q)?.correction;
            let inv = talbot_inverse(|s| delta_green_complex(p, big_q, s, GreenForm::Expanded), tau, &spec)?;
            Ok(rel(inv, target))
        });
        out.push(Check::from_result(format!("delta-talbot({tag},tau={tau})"), err, t.delta_transform));
    }
    out
}

fn spectral_checks(config: &Config) -> Vec<Check> {
    let t = &config.tolerances;
    let mut out = Vec::new();
    let p = PhysParams::natural(0.0, -1.0);
    let (m, v, hbar) = (p.m, p.v, p.hbar);

    match alpha_slope(&p, &config.alphas, &config.sigmas, &config.grid) {
        Ok(slope) => {
            let schrodinger = -m.powi(3) * v.powi(4) / hbar.powi(4);
            let path_integral = 3.0 * schrodinger;
            out.push(Check::new(
                "slope-vs-schrodinger",
                ((slope.slope - schrodinger) / schrodinger).abs(),
                t.spectral_slope_rel,
            ));
            out.push(Check::new(
                "slope-separation-from-path-integral",
                slope.error_estimate / (slope.slope - path_integral).abs(),
                1.0 / t.spectral_separation,
            ));
            for (alpha, limit) in &slope.energies {
                let pa = p.with_alpha(*alpha);
                if *alpha == 0.0 {
                    out.push(Check::new(
                        "alpha0-limit",
                        (limit.energy - (-m * v * v / (2.0 * hbar * hbar))).abs(),
                        t.spectral_energy,
                    ));
                }
                out.push(Check::new(
                    format!("parity(alpha={alpha})"),
                    limit.finest.parity_defect,
                    t.parity,
                ));
                out.push(Check::new(
                    format!("sigma-self-consistency(alpha={alpha})"),
                    (limit.energy - limit.finest.ground_energy).abs() / 10.0,
                    limit.error_estimate,
                ));
                let trial = bound_state_schrodinger(&pa).map(|s| s.wavefunction);
                for &(sigma, energy) in &limit.samples {
                    let gap = trial.as_ref().map_err(clone_err).map(|psi| {
                        energy - rayleigh_quotient(&pa, &config.grid.resolving(sigma), |q| psi.eval(q))
                    });
                    out.push(Check::from_result(
                        format!("variational(alpha={alpha},sigma={sigma})"),
                        gap,
                        0.0,
                    ));
                }
            }
        }
        Err(e) => out.push(Check::from_result("alpha-slope", Err(e), 0.0)),
    }

    let p = PhysParams::natural(1e-2, -1.0);
    let grid = GridSpec {
        sigma: 0.2,
        points: 1024,
        ..config.grid
    };
    let energies: Result<Vec<f64>> = (0..4)
        .map(|k| {
            ground_state(
                &p,
                &GridSpec {
                    points: grid.points << k,
                    ..grid
                },
            )
            .map(|r| r.ground_energy)
        })
        .collect();
    match energies {
        Ok(e) => {
            let diffs: Vec<f64> = e.windows(2).map(|w| (w[0] - w[1]).abs()).collect();
            for (k, d) in diffs.windows(2).enumerate() {
                out.push(Check::new(
                    format!("grid-convergence(points={})", grid.points << (k + 1)),
                    d[1] - d[0],
                    t.grid_floor,
                ));
            }
        }
        Err(e) => out.push(Check::from_result("grid-convergence", Err(e), t.grid_floor)),
    }
    out
}
