//! Modified Bessel functions of the second kind at half-integer order.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::quad::{integrate, Quadratures};
use crate::error::{Error, Result};

/// Supported orders ν ∈ {−1/2, 1/2, 3/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfOrder {
    MinusHalf,
    Half,
    ThreeHalves,
}

impl HalfOrder {
    pub fn value(self) -> f64 {
        match self {
            HalfOrder::MinusHalf => -0.5,
            HalfOrder::Half => 0.5,
            HalfOrder::ThreeHalves => 1.5,
        }
    }
}

impl TryFrom<f64> for HalfOrder {
    type Error = Error;

    fn try_from(nu: f64) -> Result<Self> {
        if nu == -0.5 {
            Ok(HalfOrder::MinusHalf)
        } else if nu == 0.5 {
            Ok(HalfOrder::Half)
        } else if nu == 1.5 {
            Ok(HalfOrder::ThreeHalves)
        } else {
            Err(Error::Argument(format!("unsupported Bessel order {nu}; expected -1/2, 1/2 or 3/2")))
        }
    }
}

/// `K_ν(z)` from the elementary closed forms.
pub fn bessel_k_half(order: HalfOrder, z: f64) -> Result<f64> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::domain("bessel_k_half", format!("z must be > 0, got {z}")));
    }
    let k_half = (FRAC_PI_2 / z).sqrt() * (-z).exp();
    Ok(match order {
        HalfOrder::MinusHalf | HalfOrder::Half => k_half,
        HalfOrder::ThreeHalves => k_half * (1.0 + 1.0 / z),
    })
}

/// Relative residual of `∫_0^∞ x^{ν−1} e^{−β/x−γx} dx = 2(β/γ)^{ν/2} K_ν(2√(βγ))`,
/// with the left side done by quadrature.
pub fn verify_bessel_integral(nu: f64, beta: f64, gamma: f64, quad: &Quadratures) -> Result<f64> {
    let order = HalfOrder::try_from(nu)?;
    if !(beta > 0.0 && gamma > 0.0) {
        return Err(Error::domain(
            "verify_bessel_integral",
            format!("beta and gamma must be > 0, got {beta}, {gamma}"),
        ));
    }
    let rhs = 2.0 * (beta / gamma).powf(nu / 2.0) * bessel_k_half(order, 2.0 * (beta * gamma).sqrt())?;
    let integrand = |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            x.powf(nu - 1.0) * (-beta / x - gamma * x).exp()
        }
    };
    // Split at 1 and send the tail to (0, 1] with x = 1/u.
    let head = integrate(integrand, 0.0, 1.0, quad)?;
    let tail = integrate(
        |u: f64| if u <= 0.0 { 0.0 } else { integrand(1.0 / u) / (u * u) },
        0.0,
        1.0,
        quad,
    )?;
    let lhs = head.value + tail.value;
    Ok((lhs - rhs).abs() / rhs.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_forms() {
        let k = bessel_k_half(HalfOrder::Half, 1.0).unwrap();
        assert_relative_eq!(k, 0.461_068_504_447_895_2, max_relative = 1e-14);
        assert_eq!(k, bessel_k_half(HalfOrder::MinusHalf, 1.0).unwrap());
        let z = 2.0;
        let expect = (FRAC_PI_2 / z).sqrt() * (-z).exp() * 1.5;
        assert_relative_eq!(bessel_k_half(HalfOrder::ThreeHalves, z).unwrap(), expect, max_relative = 1e-15);
    }

    #[test]
    fn domain() {
        assert!(bessel_k_half(HalfOrder::Half, 0.0).is_err());
        assert!(bessel_k_half(HalfOrder::Half, -1.0).is_err());
        assert!(HalfOrder::try_from(1.0).is_err());
    }

    #[test]
    fn integral_formula_grid() {
        let q = Quadratures::default();
        for &nu in &[0.5, 1.5] {
            for &beta in &[0.5, 1.0, 2.0] {
                for &gamma in &[0.5, 1.0, 2.0] {
                    let r = verify_bessel_integral(nu, beta, gamma, &q).unwrap();
                    assert!(r <= 1e-8, "nu={nu} beta={beta} gamma={gamma}: {r:e}");
                }
            }
        }
    }

    #[test]
    fn integral_value_at_unit_arguments() {
        let rhs = 2.0 * bessel_k_half(HalfOrder::Half, 2.0).unwrap();
        assert_relative_eq!(rhs, std::f64::consts::PI.sqrt() * (-2.0f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(rhs, 0.239_875_543_936_122_9, max_relative = 1e-12);
    }

    #[test]
    fn order_reflection_swaps_beta_gamma() {
        let q = Quadratures::default();
        let a = verify_bessel_integral(0.5, 0.5, 2.0, &q).unwrap();
        let b = verify_bessel_integral(-0.5, 2.0, 0.5, &q).unwrap();
        assert!(a <= 1e-8 && b <= 1e-8);
    }
}
