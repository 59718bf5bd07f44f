//! Complementary error function and its scaled form.
//!
//! `erfc` uses the Maclaurin series of `erf` near the origin and an even
//! continued fraction (modified Lentz) in the tails. `erfcx` is a separate
//! piecewise Chebyshev fit in `y = 4/(4 + x)`, so the two functions can be
//! checked against each other.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const SERIES_LIMIT: f64 = 0.75;
const LENTZ_TINY: f64 = 1e-300;
const LENTZ_MAX_ITER: usize = 5000;

fn check(op: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("argument must be finite, got {x}")))
    }
}

/// Complementary error function, `(2/√π) ∫_x^∞ e^{-t²} dt`.
pub fn erfc(x: f64) -> Result<f64> {
    check("erfc", x)?;
    Ok(erfc_unchecked(x))
}

/// Scaled complementary error function `e^{x²} erfc(x)`.
///
/// Finite for every finite `x ≥ 0`; overflows only where `e^{x²}` itself
/// does on the negative axis.
pub fn erfcx(x: f64) -> Result<f64> {
    check("erfcx", x)?;
    Ok(erfcx_unchecked(x))
}

pub(crate) fn erfc_unchecked(x: f64) -> f64 {
    if x.abs() < SERIES_LIMIT {
        1.0 - erf_series(x)
    } else if x > 0.0 {
        erfc_continued_fraction(x)
    } else {
        2.0 - erfc_continued_fraction(-x)
    }
}

fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= -x2 / n;
        let add = term / (2.0 * n + 1.0);
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

// erfc(x) = 2x e^{-x²}/√π / (b0 + a1/(b1 + a2/(b2 + ...))),
// b_n = 2x² + 1 + 4n, a_n = -(2n-1)(2n).
fn erfc_continued_fraction(x: f64) -> f64 {
    let x2 = x * x;
    let mut f = 2.0 * x2 + 1.0;
    let mut c = f;
    let mut d = 0.0;
    for n in 1..LENTZ_MAX_ITER {
        let nf = n as f64;
        let a = -(2.0 * nf - 1.0) * (2.0 * nf);
        let b = 2.0 * x2 + 1.0 + 4.0 * nf;
        d = b + a * d;
        if d == 0.0 {
            d = LENTZ_TINY;
        }
        d = 1.0 / d;
        c = b + a / c;
        if c == 0.0 {
            c = LENTZ_TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    FRAC_2_SQRT_PI * x * (-x2).exp() / f
}

pub(crate) fn erfcx_unchecked(x: f64) -> f64 {
    if x < 0.0 {
        2.0 * (x * x).exp() - erfcx_unchecked(-x)
    } else if x > 1e8 {
        1.0 / (x * PI.sqrt())
    } else if x > 50.0 {
        let x2 = x * x;
        (x2 * (x2 + 4.5) + 2.0) / (x * (x2 * (x2 + 5.0) + 3.75)) / PI.sqrt()
    } else {
        erfcx_chebyshev(x)
    }
}

fn erfcx_chebyshev(x: f64) -> f64 {
    let segments = ERFCX_CHEB.len();
    let y = 4.0 / (4.0 + x);
    let s = ((y * segments as f64) as usize).min(segments - 1);
    let lo = s as f64 / segments as f64;
    let hi = (s + 1) as f64 / segments as f64;
    let t = (2.0 * y - lo - hi) / (hi - lo);
    let c = &ERFCX_CHEB[s];
    let (mut b1, mut b2) = (0.0, 0.0);
    for &cj in c[1..].iter().rev() {
        let b0 = 2.0 * t * b1 - b2 + cj;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c[0]
}

// Chebyshev coefficients of erfcx on eight equal segments of y ∈ [0, 1],
// with the constant term already halved.
#[allow(clippy::excessive_precision, clippy::unreadable_literal)]
const ERFCX_CHEB: [[f64; 21]; 8] = [
    [
        0.009734801145905437,
        0.010057746791635512,
        0.00033327308694073985,
        1.0644612743932145e-05,
        3.2648256545438567e-07,
        9.570730784794131e-09,
        2.6652455929371517e-10,
        6.993090035893902e-12,
        1.7087202843726893e-13,
        3.819235895738025e-15,
        7.573187596756627e-17,
        1.2507303613104357e-18,
        1.426240331687899e-20,
        -5.946644403545607e-24,
        -5.7161832264342725e-24,
        -1.7110709900238199e-25,
        -2.575703784301022e-27,
        5.716403424350815e-30,
        1.4997225876386912e-30,
        4.115354019853395e-32,
        3.3725330259594534e-34,
    ],
    [
        0.032994903463768856,
        0.013340863680274371,
        0.0005000059198920174,
        1.7826743993034354e-05,
        6.015411145696647e-07,
        1.9085699476453065e-08,
        5.64400551269796e-10,
        1.536472527397024e-11,
        3.77883678499528e-13,
        8.133310445122013e-15,
        1.4361640344180453e-16,
        1.7236987916124395e-18,
        -3.799893059350276e-22,
        -6.842846127401366e-22,
        -1.8991984849797517e-23,
        -2.042047069458557e-25,
        3.912027620652071e-27,
        2.078977966942798e-28,
        3.0339191239951116e-30,
        -4.859048581650547e-32,
        -3.035451044780182e-33,
    ],
    [
        0.064492235737805,
        0.018394845159214687,
        0.0007871226323534069,
        3.141583037089778e-05,
        1.1619243300300451e-06,
        3.947405043160366e-08,
        1.216657297078876e-09,
        3.3392062010264796e-11,
        7.911158765244863e-13,
        1.5219376429949094e-14,
        2.0114899644932455e-16,
        3.6604808648731614e-19,
        -6.622896547407265e-20,
        -1.8057869343795548e-21,
        -1.339731483320792e-23,
        5.566850245500617e-25,
        1.8473305284291762e-26,
        6.759417518280204e-29,
        -9.176354091484529e-30,
        -1.9941164345607964e-31,
        2.4806384936206688e-33,
    ],
    [
        0.10904294384363913,
        0.02658794904870807,
        0.0013078571024511642,
        5.8285374771483475e-05,
        2.3362701140313383e-06,
        8.33155503543103e-08,
        2.5993397772066815e-09,
        6.89883114511929e-11,
        1.4766474641493924e-12,
        2.230461119097407e-14,
        1.1307740937267227e-16,
        -5.101224768901769e-18,
        -1.5514199918079761e-19,
        -1.0150498348516851e-21,
        4.950349623919797e-23,
        1.2829334090620524e-24,
        -5.463239395419268e-27,
        -7.333741201986712e-28,
        -5.475537448193089e-30,
        3.588469943834637e-31,
        6.283558893506177e-33,
    ],
    [
        0.17544469871275278,
        0.04063631508470142,
        0.002299578346156196,
        0.00011314826275261689,
        4.813703571863647e-06,
        1.7497912458887985e-07,
        5.316280414173795e-09,
        1.2938726947122145e-10,
        2.2863805320778853e-12,
        2.0088322593037235e-14,
        -2.7742370902141825e-16,
        -1.2270947889080881e-17,
        -1.0578679065489105e-19,
        3.264095190578466e-21,
        8.46363167023116e-23,
        -5.39809118649736e-25,
        -4.332128288264715e-26,
        -3.595054086550239e-29,
        2.1292877866967284e-29,
        9.252739286178062e-32,
        -1.1132773347102267e-32,
    ],
    [
        0.2805456207186377,
        0.06609113995017633,
        0.004261155670876849,
        0.00022648470910426348,
        9.927840343923636e-06,
        3.548757931941575e-07,
        1.0050440130277934e-08,
        2.1086474673282331e-10,
        2.6715406204716047e-12,
        -2.5384088943453704e-15,
        -8.503549837324482e-16,
        -1.167694882100063e-17,
        1.52508726798897e-19,
        5.70499588426384e-21,
        -1.638858390527507e-23,
        -2.3587446551663684e-24,
        -1.0743902782469257e-27,
        1.010868957629913e-27,
        3.527997285173962e-31,
        -4.626126413641254e-31,
        1.296176819377426e-33,
    ],
    [
        0.45774541421025106,
        0.11438724333050936,
        0.008214611984839288,
        0.00045739372402579164,
        1.9964344136215388e-05,
        6.762561602829035e-07,
        1.708595278484241e-08,
        2.8749222893834937e-10,
        1.870995793292913e-12,
        -4.370034979003055e-14,
        -1.109746160591217e-15,
        1.5951743856920189e-18,
        3.6214768198419515e-19,
        1.3606529205806664e-21,
        -1.2063900371073984e-22,
        -6.086882850418199e-25,
        4.509894652505473e-26,
        1.1857399762556842e-28,
        -1.8159562529512427e-29,
        5.286929570928681e-32,
        7.116027702501116e-33,
    ],
    [
        0.7742282265740498,
        0.208676009757173,
        0.016146138523253275,
        0.0009101413851403015,
        3.826983706250777e-05,
        1.187931100159809e-06,
        2.567866922653262e-08,
        3.1407150707118303e-10,
        -4.3748303644133014e-13,
        -8.157630846152168e-14,
        -6.637781688822209e-16,
        1.7847289366237306e-17,
        2.60102484424085e-19,
        -4.873472440932897e-21,
        -7.811088290006606e-23,
        1.730125035183021e-24,
        1.869071811668031e-26,
        -6.860728042600528e-28,
        -1.6536012084283433e-30,
        2.556800630916011e-31,
        -1.844380913244151e-33,
    ],
];

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn erfc_at_origin_and_one() {
        assert_eq!(erfc(0.0).unwrap(), 1.0);
        assert_relative_eq!(erfc(1.0).unwrap(), 0.157_299_207_050_285_13, max_relative = 1e-14);
        assert_relative_eq!(erfc(0.5).unwrap(), 0.479_500_122_186_953_5, max_relative = 1e-14);
        assert_relative_eq!(erfc(3.0).unwrap(), 2.209_049_699_858_544e-5, max_relative = 1e-13);
        assert_relative_eq!(erfc(-1.5).unwrap(), 1.966_105_146_475_310_7, max_relative = 1e-15);
    }

    #[test]
    fn reflection() {
        for i in -60..=60 {
            let x = i as f64 * 0.1;
            let s = erfc(x).unwrap() + erfc(-x).unwrap();
            assert!((s - 2.0).abs() <= 1e-12, "x = {x}: {s}");
        }
    }

    #[test]
    fn erfc_is_decreasing_and_bounded() {
        let mut prev = 2.0;
        for i in -300..=300 {
            let v = erfc(i as f64 * 0.02).unwrap();
            assert!(v <= prev && (0.0..=2.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn erfcx_matches_product() {
        for i in 0..=100 {
            let x = i as f64 * 0.05;
            let lhs = erfcx(x).unwrap() * (-x * x).exp();
            let rhs = erfc(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
        assert_relative_eq!(
            erfcx(1.5).unwrap(),
            2.25f64.exp() * erfc(1.5).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn erfcx_reference_values() {
        assert_relative_eq!(erfcx(0.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(erfcx(10.0).unwrap(), 0.056_140_992_743_822_59, max_relative = 1e-14);
        assert_relative_eq!(erfcx(100.0).unwrap(), 0.005_641_613_782_989_433, max_relative = 1e-14);
        assert_relative_eq!(erfcx(-1.0).unwrap(), 5.008_980_080_762_283, max_relative = 1e-14);
        let asym = 1.0 / (50.0 * PI.sqrt());
        assert!((erfcx(50.0).unwrap() / asym - 1.0).abs() < 1e-3);
        assert!(erfcx(1e300).unwrap().is_finite());
    }

    #[test]
    fn continuous_across_branches() {
        for &x in &[SERIES_LIMIT, 50.0] {
            let below = erfcx(x * (1.0 - 1e-15)).unwrap();
            let above = erfcx(x * (1.0 + 1e-15)).unwrap();
            assert_relative_eq!(below, above, max_relative = 1e-14);
        }
        let below = erfc(SERIES_LIMIT - 1e-15).unwrap();
        let above = erfc(SERIES_LIMIT + 1e-15).unwrap();
        assert_relative_eq!(below, above, max_relative = 1e-14);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(erfc(f64::NAN).is_err());
        assert!(erfcx(f64::INFINITY).is_err());
    }
}
