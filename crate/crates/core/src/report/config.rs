//! Tolerances and numerical settings in one block, with a key=value file
//! format for overriding them.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numerics::quad::Quadratures;
use crate::numerics::talbot::TalbotSpec;
use crate::spectral::{GridSpec, DEFAULT_ALPHAS, DEFAULT_SIGMAS};

/// Every acceptance threshold used by the suites and the report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// erfc reflection, erfcx identity and Bessel recurrence.
    pub special_identity: f64,
    /// Forward Laplace transform of the table pairs.
    pub laplace_forward: f64,
    /// Talbot inversion of the table pairs.
    pub laplace_talbot: f64,
    /// Forward transform of a Talbot inversion.
    pub talbot_roundtrip: f64,
    /// The Bessel integral formula by quadrature.
    pub bessel_integral: f64,
    /// Closed-form free propagator against its plane-wave oracle.
    pub free_oracle: f64,
    /// Closed forms at α = 0 against the textbook expressions.
    pub textbook: f64,
    pub semigroup: f64,
    pub normalization: f64,
    /// Forward transform of the free propagator against `Ĝ₀`; the bound
    /// is `max(green_transform, green_alpha_factor·α²)`.
    pub green_transform: f64,
    pub green_alpha_factor: f64,
    /// Algebraic integral equation in the energy domain.
    pub integral_equation: f64,
    /// Time-domain integral equation by quadrature.
    pub schwinger: f64,
    /// Point-interaction propagator between time and energy domains.
    pub delta_transform: f64,
    /// erfc form against the image integral at α = 0.
    pub image_form: f64,
    /// Normalization of the bound-state wavefunction.
    pub wavefunction_norm: f64,
    /// Coefficient `c` in the `c·α²` bounds on first-order results.
    pub alpha_squared_factor: f64,
    /// Allowed relative deviation of off-diagonal boundary residuals from `2αm²v²/ℏ²`.
    pub offdiagonal_rel: f64,
    /// Expected shrink factor under α → α/2 and its allowed band.
    pub scaling_ratio: f64,
    pub scaling_band: f64,
    pub parity: f64,
    /// σ → 0 limit at α = 0 against `−mv²/2ℏ²`.
    pub spectral_energy: f64,
    /// Allowed relative deviation of `dE/dα` from the Schrödinger coefficient.
    pub spectral_slope_rel: f64,
    /// Required separation from the path-integral coefficient, in error estimates.
    pub spectral_separation: f64,
    /// Floor below which successive grid differences count as converged.
    pub grid_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            special_identity: 1e-12,
            laplace_forward: 1e-8,
            laplace_talbot: 1e-6,
            talbot_roundtrip: 1e-6,
            bessel_integral: 1e-8,
            free_oracle: 1e-8,
            textbook: 1e-12,
            semigroup: 1e-6,
            normalization: 1e-8,
            green_transform: 1e-8,
            green_alpha_factor: 5.0,
            integral_equation: 1e-12,
            schwinger: 1e-5,
            delta_transform: 1e-6,
            image_form: 1e-8,
            wavefunction_norm: 1e-12,
            alpha_squared_factor: 10.0,
            offdiagonal_rel: 0.1,
            scaling_ratio: 4.0,
            scaling_band: 1.0,
            parity: 1e-8,
            spectral_energy: 1e-3,
            spectral_slope_rel: 0.1,
            spectral_separation: 3.0,
            grid_floor: 1e-12,
        }
    }
}

/// Tolerances plus the settings of every numerical method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub tolerances: Tolerances,
    pub quadrature: Quadratures,
    pub talbot: TalbotSpec,
    pub grid: GridSpec,
    /// Regularization widths for the σ → 0 extrapolation.
    pub sigmas: Vec<f64>,
    /// α values for the spectral slope.
    pub alphas: Vec<f64>,
    /// Sample count of the pole scan.
    pub pole_scan_points: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tolerances: Tolerances::default(),
            quadrature: Quadratures::default(),
            talbot: TalbotSpec::default(),
            grid: GridSpec::default(),
            sigmas: DEFAULT_SIGMAS.to_vec(),
            alphas: DEFAULT_ALPHAS.to_vec(),
            pole_scan_points: 20_000,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate()?;
        self.talbot.validate()?;
        if self.sigmas.len() < 2 || self.sigmas.iter().any(|s| !(*s > 0.0)) {
            return Err(Error::Argument("sigmas: need at least two positive widths".into()));
        }
        if self.alphas.len() < 2 || self.alphas.iter().any(|a| !(*a >= 0.0)) {
            return Err(Error::Argument("alphas: need at least two non-negative values".into()));
        }
        if self.pole_scan_points < 2 {
            return Err(Error::Argument("pole_scan_points must be >= 2".into()));
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of this configuration.
    ///
    /// Keys are dotted field paths such as `tolerances.semigroup` or
    /// `grid.points`; list fields take comma-separated numbers. Blank lines
    /// and `#` comments are ignored.
    pub fn apply_text(&self, text: &str) -> Result<Config> {
        let mut tree = serde_json::to_value(self).map_err(|e| Error::Serialize(e.to_string()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Argument(format!("config line {}: expected key = value", lineno + 1)))?;
            set_path(&mut tree, key.trim(), value.trim())
                .map_err(|e| Error::Argument(format!("config line {}: {e}", lineno + 1)))?;
        }
        let cfg: Config = serde_json::from_value(tree).map_err(|e| Error::Argument(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Config::default().apply_text(&text)
    }
}

fn set_path(tree: &mut Value, key: &str, raw: &str) -> std::result::Result<(), String> {
    let mut node = tree;
    for part in key.split('.') {
        node = node
            .get_mut(part)
            .ok_or_else(|| format!("unknown key '{key}'"))?;
    }
    *node = match node {
        Value::Array(_) => Value::Array(
            raw.split(',')
                .map(|s| parse_scalar(s.trim()))
                .collect::<std::result::Result<_, _>>()?,
        ),
        Value::Object(_) => return Err(format!("'{key}' is a section, not a value")),
        _ => parse_scalar(raw)?,
    };
    Ok(())
}

fn parse_scalar(raw: &str) -> std::result::Result<Value, String> {
    if let Ok(i) = raw.parse::<u64>() {
        return Ok(Value::from(i));
    }
    raw.parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map(Value::Number)
        .ok_or_else(|| format!("'{raw}' is not a number"))
}
