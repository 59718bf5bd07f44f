//! Momentum-space grid eigensolver for `p²/2m + αp⁴/m + v·δ_σ(q)`.
//!
//! The kinetic term is diagonal in the plane-wave basis and the potential
//! in the position basis; the Hamiltonian is applied with FFTs. The ground
//! state is found by a single-vector LOBPCG with a kinetic preconditioner.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::dispersion;
use crate::numerics::extrapolate::richardson_extrapolate;
use crate::params::PhysParams;
use crate::schrodinger::{BoundState, Method, PiecewiseExponential};

/// Periodic box, number of grid points and regularization width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub box_length: f64,
    pub points: usize,
    pub sigma: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            box_length: 40.0,
            points: 4096,
            sigma: 0.05,
        }
    }
}

impl GridSpec {
    pub fn spacing(&self) -> f64 {
        self.box_length / self.points as f64
    }

    /// Checks the grid against the decay length `1/a` it must contain.
    pub fn validate(&self, decay: f64) -> Result<()> {
        if self.points < 512 || !self.points.is_power_of_two() {
            return Err(Error::Argument(format!(
                "grid points must be a power of two >= 512, got {}",
                self.points
            )));
        }
        if !(self.box_length > 0.0) || self.box_length < 20.0 / decay {
            return Err(Error::Argument(format!(
                "box length {} is shorter than 20 decay lengths ({})",
                self.box_length,
                20.0 / decay
            )));
        }
        if !(self.sigma > 0.0) || self.sigma < 4.0 * self.spacing() {
            return Err(Error::Argument(format!(
                "sigma {} does not resolve the well on spacing {} (needs >= {})",
                self.sigma,
                self.spacing(),
                4.0 * self.spacing()
            )));
        }
        Ok(())
    }

    /// This grid with `sigma`, doubling the points until the well is
    /// resolved.
    pub fn resolving(&self, sigma: f64) -> GridSpec {
        let mut g = GridSpec { sigma, ..*self };
        while g.sigma < 4.0 * g.spacing() {
            g.points *= 2;
        }
        g
    }
}

/// Potential on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Potential {
    /// `v·e^{−q²/2σ²}/(σ√2π)`.
    RegularizedDelta,
    /// `mω²q²/2`.
    Harmonic { omega: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub ground_energy: f64,
    /// Norm of the ground vector recomputed in the plane-wave basis.
    pub ground_vector_norm_check: f64,
    pub sigma: f64,
    /// Largest `|ψ(q) − ψ(−q)|` relative to `max|ψ|`.
    pub parity_defect: f64,
    /// Exponential decay rate fitted to the tail of the ground vector.
    pub tail_decay: f64,
    pub iterations: usize,
    pub residual_norm: f64,
}

/// σ → 0 extrapolation of the regularized ground energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaLimit {
    pub energy: f64,
    pub error_estimate: f64,
    /// Power of σ used in the extrapolation.
    pub order: u32,
    /// `(E₁ − E₂)/(E₂ − E₃)` over the three smallest σ.
    pub ratio: f64,
    pub samples: Vec<(f64, f64)>,
    pub finest: SpectralResult,
}

/// `dE/dα` at α = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSlope {
    pub slope: f64,
    pub error_estimate: f64,
    pub energies: Vec<(f64, DeltaLimit)>,
}

pub const DEFAULT_SIGMAS: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];
pub const DEFAULT_ALPHAS: [f64; 3] = [0.0, 5e-3, 1e-2];

const MAX_LOBPCG_ITER: usize = 5000;
const ENERGY_TOLERANCE: f64 = 1e-12;
const RESIDUAL_TOLERANCE: f64 = 1e-8;

struct Hamiltonian {
    n: usize,
    kinetic: Vec<f64>,
    potential: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Hamiltonian {
    fn new(p: &PhysParams, grid: &GridSpec, potential: Potential) -> Self {
        let n = grid.points;
        let dx = grid.spacing();
        let dk = 2.0 * PI / grid.box_length;
        let kinetic = (0..n)
            .map(|j| {
                let idx = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
                dispersion(p, idx * dk)
            })
            .collect();
        let potential = (0..n)
            .map(|j| {
                let q = (j as f64 - (n / 2) as f64) * dx;
                match potential {
                    Potential::RegularizedDelta => {
                        p.v * (-q * q / (2.0 * grid.sigma * grid.sigma)).exp() / (grid.sigma * (2.0 * PI).sqrt())
                    }
                    Potential::Harmonic { omega } => 0.5 * p.m * omega * omega * q * q,
                }
            })
            .collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch = vec![Complex64::new(0.0, 0.0); forward.get_inplace_scratch_len().max(inverse.get_inplace_scratch_len())];
        Hamiltonian {
            n,
            kinetic,
            potential,
            forward,
            inverse,
            buffer: vec![Complex64::new(0.0, 0.0); n],
            scratch,
        }
    }

    /// Multiplies by a diagonal in the plane-wave basis.
    fn momentum_diagonal(&mut self, x: &[f64], diag: impl Fn(f64) -> f64, out: &mut [f64]) {
        for (b, &v) in self.buffer.iter_mut().zip(x) {
            *b = Complex64::new(v, 0.0);
        }
        self.forward.process_with_scratch(&mut self.buffer, &mut self.scratch);
        for (b, &t) in self.buffer.iter_mut().zip(&self.kinetic) {
            *b *= diag(t);
        }
        self.inverse.process_with_scratch(&mut self.buffer, &mut self.scratch);
        let scale = 1.0 / self.n as f64;
        for (o, b) in out.iter_mut().zip(&self.buffer) {
            *o = b.re * scale;
        }
    }

    fn apply(&mut self, x: &[f64], out: &mut [f64]) {
        self.momentum_diagonal(x, |t| t, out);
        for ((o, &v), &xi) in out.iter_mut().zip(&self.potential).zip(x) {
            *o += v * xi;
        }
    }

    fn precondition(&mut self, r: &[f64], shift: f64, out: &mut [f64]) {
        self.momentum_diagonal(r, |t| 1.0 / (t + shift), out);
    }

    /// Norm in the plane-wave basis, `Σ|ψ̂_k|²/N`.
    fn momentum_norm(&mut self, x: &[f64]) -> f64 {
        for (b, &v) in self.buffer.iter_mut().zip(x) {
            *b = Complex64::new(v, 0.0);
        }
        self.forward.process_with_scratch(&mut self.buffer, &mut self.scratch);
        self.buffer.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.n as f64
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(a: &mut [f64]) -> f64 {
    let n = dot(a, a).sqrt();
    if n > 0.0 {
        a.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Lowest eigenpair by preconditioned LOBPCG from `start`.
fn lobpcg(h: &mut Hamiltonian, start: Vec<f64>) -> Result<(f64, Vec<f64>, usize, f64)> {
    let n = h.n;
    let mut x = start;
    normalize(&mut x);
    let mut hx = vec![0.0; n];
    h.apply(&x, &mut hx);
    let mut lambda = dot(&x, &hx);
    let mut prev: Option<Vec<f64>> = None;
    let mut r = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut last_residual = f64::INFINITY;
    for iter in 0..MAX_LOBPCG_ITER {
        for i in 0..n {
            r[i] = hx[i] - lambda * x[i];
        }
        let res = dot(&r, &r).sqrt();
        last_residual = res;
        if res <= RESIDUAL_TOLERANCE * lambda.abs().max(1.0) {
            return Ok((lambda, x, iter, res));
        }
        h.precondition(&r, lambda.abs().max(1.0), &mut w);

        // Orthonormal basis of span{x, w, p}.
        let mut basis: Vec<Vec<f64>> = vec![x.clone()];
        for cand in std::iter::once(w.clone()).chain(prev.clone()) {
            let mut c = cand;
            for _ in 0..2 {
                for b in &basis {
                    let proj = dot(&c, b);
                    c.iter_mut().zip(b).for_each(|(ci, bi)| *ci -= proj * bi);
                }
            }
            if normalize(&mut c) > 1e-14 {
                basis.push(c);
            }
        }
        let hb: Vec<Vec<f64>> = basis
            .iter()
            .map(|b| {
                let mut out = vec![0.0; n];
                h.apply(b, &mut out);
                out
            })
            .collect();
        let m = basis.len();
        let gram = DMatrix::from_fn(m, m, |i, j| 0.5 * (dot(&basis[i], &hb[j]) + dot(&basis[j], &hb[i])));
        let eig = SymmetricEigen::new(gram);
        let (imin, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty subspace");
        let c = eig.eigenvectors.column(imin);
        let new_lambda = eig.eigenvalues[imin];

        let mut x_new = vec![0.0; n];
        let mut hx_new = vec![0.0; n];
        let mut p_new = vec![0.0; n];
        for k in 0..m {
            for i in 0..n {
                x_new[i] += c[k] * basis[k][i];
                hx_new[i] += c[k] * hb[k][i];
                if k > 0 {
                    p_new[i] += c[k] * basis[k][i];
                }
            }
        }
        let norm = normalize(&mut x_new);
        hx_new.iter_mut().for_each(|v| *v /= norm);
        let converged = (new_lambda - lambda).abs() <= ENERGY_TOLERANCE * new_lambda.abs().max(1.0);
        x = x_new;
        hx = hx_new;
        lambda = new_lambda;
        prev = Some(p_new);
        if converged && iter > 2 {
            h.apply(&x, &mut hx);
            lambda = dot(&x, &hx);
            for i in 0..n {
                r[i] = hx[i] - lambda * x[i];
            }
            let res = dot(&r, &r).sqrt();
            if res <= 1e3 * RESIDUAL_TOLERANCE * lambda.abs().max(1.0) {
                return Ok((lambda, x, iter + 1, res));
            }
        }
    }
    Err(Error::no_convergence(
        "ground_state",
        format!("LOBPCG stopped after {MAX_LOBPCG_ITER} iterations with residual {last_residual:e}, energy {lambda}"),
    ))
}

fn positions(grid: &GridSpec) -> Vec<f64> {
    let n = grid.points;
    (0..n).map(|j| (j as f64 - (n / 2) as f64) * grid.spacing()).collect()
}

fn start_vector(grid: &GridSpec, decay: f64) -> Vec<f64> {
    positions(grid).iter().map(|q| (-decay * q.abs()).exp()).collect()
}

/// Ground state of the grid Hamiltonian with the given potential.
pub fn ground_state_with(p: &PhysParams, grid: &GridSpec, potential: Potential) -> Result<SpectralResult> {
    p.validate()?;
    let decay = match potential {
        Potential::RegularizedDelta => {
            p.require_bound()?;
            p.m * p.v.abs() / (p.hbar * p.hbar)
        }
        Potential::Harmonic { omega } => (p.m * omega / p.hbar).sqrt(),
    };
    grid.validate(decay)?;
    let mut h = Hamiltonian::new(p, grid, potential);
    let start = match potential {
        Potential::RegularizedDelta => start_vector(grid, decay),
        Potential::Harmonic { .. } => positions(grid).iter().map(|q| (-0.5 * decay * decay * q * q).exp()).collect(),
    };
    let (energy, mut x, iterations, residual_norm) = lobpcg(&mut h, start)?;

    let dx = grid.spacing();
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    // Unit norm in ∫|ψ|² dq.
    let scale = 1.0 / (dot(&x, &x) * dx).sqrt();
    x.iter_mut().for_each(|v| *v *= scale);
    let norm_check = h.momentum_norm(&x) * dx;

    let n = grid.points;
    let peak = x.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let parity_defect = (1..n / 2).map(|j| (x[n / 2 + j] - x[n / 2 - j]).abs()).fold(0.0, f64::max) / peak;

    Ok(SpectralResult {
        ground_energy: energy,
        ground_vector_norm_check: norm_check,
        sigma: grid.sigma,
        parity_defect,
        tail_decay: fit_tail(&x, grid, decay),
        iterations,
        residual_norm,
    })
}

/// Ground state of the regularized point interaction.
pub fn ground_state(p: &PhysParams, grid: &GridSpec) -> Result<SpectralResult> {
    ground_state_with(p, grid, Potential::RegularizedDelta)
}

/// Least-squares slope of `−ln ψ` over `q ∈ [4/a, 10/a]`.
fn fit_tail(x: &[f64], grid: &GridSpec, decay: f64) -> f64 {
    let q = positions(grid);
    let (lo, hi) = (4.0 / decay, (10.0 / decay).min(0.4 * grid.box_length));
    let pts: Vec<(f64, f64)> = q
        .iter()
        .zip(x)
        .filter(|(&qi, &xi)| qi >= lo && qi <= hi && xi > 0.0)
        .map(|(&qi, &xi)| (qi, xi.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let nf = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    -sxy / sxx
}

/// `⟨ψ|H|ψ⟩/⟨ψ|ψ⟩` for a trial function sampled on the grid.
pub fn rayleigh_quotient(p: &PhysParams, grid: &GridSpec, trial: impl Fn(f64) -> f64) -> f64 {
    let mut h = Hamiltonian::new(p, grid, Potential::RegularizedDelta);
    let x: Vec<f64> = positions(grid).into_iter().map(trial).collect();
    let mut hx = vec![0.0; x.len()];
    h.apply(&x, &mut hx);
    dot(&x, &hx) / dot(&x, &x)
}

/// Extrapolates the regularized ground energy to σ → 0.
///
/// The leading error is assumed linear in σ unless the ratio of successive
/// differences over the three smallest σ is closer to 4 than to 2, in which
/// case it is taken as quadratic.
pub fn delta_limit_energy(p: &PhysParams, sigmas: &[f64], template: &GridSpec) -> Result<DeltaLimit> {
    if sigmas.len() < 3 {
        return Err(Error::Argument(format!("need at least 3 sigmas, got {}", sigmas.len())));
    }
    if sigmas.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(Error::Argument("sigmas must be strictly descending".into()));
    }
    let results: Vec<SpectralResult> = sigmas
        .par_iter()
        .map(|&s| ground_state(p, &template.resolving(s)))
        .collect::<Result<_>>()?;
    let samples: Vec<(f64, f64)> = results.iter().map(|r| (r.sigma, r.ground_energy)).collect();
    let k = samples.len();
    let (e1, e2, e3) = (samples[k - 3].1, samples[k - 2].1, samples[k - 1].1);
    let ratio = (e1 - e2) / (e2 - e3);
    let order = if (ratio - 4.0).abs() < (ratio - 2.0).abs() { 2 } else { 1 };
    let ex = richardson_extrapolate(&samples, order)?;
    Ok(DeltaLimit {
        energy: ex.value,
        error_estimate: ex.error_estimate,
        order,
        ratio,
        samples,
        finest: *results.last().expect("at least three results"),
    })
}

/// Bound state from the spectral oracle: extrapolated energy and the tail
/// decay of the finest-σ ground vector.
pub fn bound_state_spectral(p: &PhysParams, sigmas: &[f64], template: &GridSpec) -> Result<(DeltaLimit, BoundState)> {
    let limit = delta_limit_energy(p, sigmas, template)?;
    let state = BoundState {
        energy: limit.energy,
        wavefunction: PiecewiseExponential::normalized(limit.finest.tail_decay)?,
        method: Method::Spectral,
    };
    Ok((limit, state))
}

/// `dE/dα` at α = 0 from the interpolating polynomial through the
/// extrapolated energies at `alphas` (which must include 0).
///
/// The error estimate adds the propagated extrapolation errors to the
/// change in slope between the lowest-order and full-order difference
/// formulas.
pub fn alpha_slope(p: &PhysParams, alphas: &[f64], sigmas: &[f64], template: &GridSpec) -> Result<AlphaSlope> {
    if alphas.len() < 3 || !alphas.contains(&0.0) {
        return Err(Error::Argument("alpha_slope needs 0 and at least two positive alphas".into()));
    }
    let mut a: Vec<f64> = alphas.to_vec();
    a.sort_by(f64::total_cmp);
    if a.windows(2).any(|w| w[0] == w[1]) || a[0] < 0.0 {
        return Err(Error::Argument("alphas must be distinct and non-negative".into()));
    }
    let energies: Vec<(f64, DeltaLimit)> = a
        .par_iter()
        .map(|&alpha| delta_limit_energy(&p.with_alpha(alpha), sigmas, template).map(|d| (alpha, d)))
        .collect::<Result<_>>()?;

    let weights = derivative_weights(&a);
    let slope: f64 = weights.iter().zip(&energies).map(|(w, (_, d))| w * d.energy).sum();
    let propagated = weights
        .iter()
        .zip(&energies)
        .map(|(w, (_, d))| (w * d.error_estimate).powi(2))
        .sum::<f64>()
        .sqrt();
    let lowest = (energies[1].1.energy - energies[0].1.energy) / (a[1] - a[0]);
    Ok(AlphaSlope {
        slope,
        error_estimate: propagated + (slope - lowest).abs(),
        energies,
    })
}

/// Weights of the derivative at 0 of the Lagrange interpolant through `xs`.
fn derivative_weights(xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    (0..n)
        .map(|j| {
            let denom: f64 = (0..n).filter(|&k| k != j).map(|k| xs[j] - xs[k]).product();
            let mut num = 0.0;
            for i in (0..n).filter(|&i| i != j) {
                num += (0..n).filter(|&k| k != j && k != i).map(|k| -xs[k]).product::<f64>();
            }
            num / denom
        })
        .collect()
}
