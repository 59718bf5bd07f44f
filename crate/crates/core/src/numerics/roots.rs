//! Newton iteration with a recorded trace.

use crate::error::{Error, Result};

pub const MAX_NEWTON_ITER: usize = 100;
const MAX_HALVINGS: usize = 40;

/// Finds `x` with `|g(x)| ≤ tol` by Newton's method from `x0`.
///
/// A step that lands where `g` is not finite is halved until it does not.
/// Failures carry every iterate visited.
pub fn newton_root<G, D>(g: G, dg: D, x0: f64, tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if !(tol > 0.0) || !x0.is_finite() {
        return Err(Error::Argument(format!("newton_root needs tol > 0 and finite x0, got {tol}, {x0}")));
    }
    let mut x = x0;
    let mut gx = g(x);
    let mut trace = vec![x];
    for _ in 0..MAX_NEWTON_ITER {
        if !gx.is_finite() {
            return Err(Error::RootFind {
                reason: format!("g is not finite at {x}"),
                trace,
            });
        }
        if gx.abs() <= tol {
            return Ok(x);
        }
        let d = dg(x);
        if !d.is_finite() || d.abs() < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::RootFind {
                reason: format!("derivative underflow ({d:e}) at {x}"),
                trace,
            });
        }
        let mut step = gx / d;
        let mut next = x - step;
        let mut g_next = g(next);
        let mut halvings = 0;
        while !g_next.is_finite() && halvings < MAX_HALVINGS {
            step *= 0.5;
            next = x - step;
            g_next = g(next);
            halvings += 1;
        }
        x = next;
        gx = g_next;
        trace.push(x);
    }
    if gx.is_finite() && gx.abs() <= tol {
        return Ok(x);
    }
    Err(Error::RootFind {
        reason: format!("no convergence in {MAX_NEWTON_ITER} iterations (|g| = {:e})", gx.abs()),
        trace,
    })
}
