//! Shared fixtures for the benchmarks.

use gupdelta_core::report::Config;
use gupdelta_core::spectral::GridSpec;
use gupdelta_core::PhysParams;

/// ℏ = m = 1, v = −1 at the given α.
pub fn attractive(alpha: f64) -> PhysParams {
    PhysParams::natural(alpha, -1.0)
}

/// A grid small enough for repeated solves.
pub fn small_grid(sigma: f64) -> GridSpec {
    GridSpec {
        box_length: 40.0,
        points: 1024,
        sigma,
    }
}

pub fn config() -> Config {
    Config::default()
}
