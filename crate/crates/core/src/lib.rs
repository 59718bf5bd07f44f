//! One-dimensional quantum mechanics with a minimal-length (GUP) deformation
//! and a point interaction: closed-form propagators and Green's functions,
//! bound states from the fourth-order Schrödinger equation and from the
//! Green's-function pole, an independent spectral solver, and the
//! verification suites tying them together.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod free;
pub mod laplace_table;
pub mod numerics;
pub mod params;
pub mod pathintegral;
pub mod report;
pub mod schrodinger;
pub mod spectral;

pub use error::{Error, Result};
pub use free::OracleMode;
pub use numerics::{Quadratures, TalbotSpec};
pub use params::{ComplexValue, PhysParams, PropagatorQuery, TimeArg};
pub use pathintegral::{DeltaGreenQuery, GreenArg, GreenForm, GreenParts, PoleResult};
pub use report::{
    compare_bound_states, run_suite, ComparisonReport, Config, Format, Suite, SuiteOutcome, Tolerances,
};
pub use schrodinger::{BcResidual, BoundState, Method, PiecewiseExponential};
pub use spectral::{AlphaSlope, DeltaLimit, GridSpec, SpectralResult};
