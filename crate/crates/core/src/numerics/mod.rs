//! Special functions and transform machinery.

pub mod bessel;
pub mod erf;
pub mod extrapolate;
pub mod laplace;
pub mod quad;
pub mod roots;
pub mod talbot;

pub use bessel::{bessel_k_half, verify_bessel_integral, HalfOrder};
pub use erf::{erfc, erfcx};
pub use extrapolate::{richardson_extrapolate, Extrapolation};
pub use laplace::laplace_forward;
pub use quad::{integrate, integrate_real_line, integrate_to_infinity, Estimate, Quadratures};
pub use roots::newton_root;
pub use talbot::{talbot_inverse, TalbotSpec};
