//! The integral route to the same series.
//!
//! For `1 <= j <= T-1`,
//!
//! ```text
//! integral_0^1 (u^j - u^(j-1)) / (u^T - 1) du = sum_k ( 1/(kT+j) - 1/(kT+j+1) )
//! ```
//!
//! The integrand equals `u^(j-1) / (1 + u + ... + u^(T-1))`, which is smooth on
//! the closed interval, so no limit at `u = 1` is needed.

pub mod gauss;

use crate::error::{Result, SeriesError};
use crate::evaluator::{EvalResult, Evaluator, Method};
use crate::rational::int;
use crate::series::{make_vector, CoefficientVector};

/// Refinement budget for [`integrate`].
pub const MAX_PANELS: usize = 20_000;

fn check_pair(t: usize, j: usize) -> Result<()> {
    if t < 2 || j == 0 || j >= t {
        return Err(SeriesError::InvalidArgument(format!(
            "need T >= 2 and 1 <= j <= T-1, got T={t}, j={j}"
        )));
    }
    Ok(())
}

fn check_tol(tol: f64, min: f64) -> Result<()> {
    if !(tol.is_finite() && tol >= min) {
        return Err(SeriesError::InvalidArgument(format!(
            "tolerance must be a finite value >= {min:e}, got {tol:e}"
        )));
    }
    Ok(())
}

/// `u^(j-1) / (1 + u + ... + u^(T-1))`; equals `1/T` at `u = 1`.
pub fn integrand(t: usize, j: usize, u: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&u));
    let den = (0..t).fold(0.0, |acc, _| acc * u + 1.0);
    u.powi(j as i32 - 1) / den
}

/// The vector with `+1` in slot `j` and `-1` in slot `j+1`.
pub fn difference_vector(t: usize, j: usize) -> Result<CoefficientVector> {
    check_pair(t, j)?;
    let mut coeffs = vec![int(0); t];
    coeffs[j - 1] = int(1);
    coeffs[j] = int(-1);
    make_vector(t, coeffs)
}

/// Adaptive 15-point Gauss-Legendre integral of [`integrand`] over `[0, 1]`
/// with estimated absolute error at most `tol` (`tol >= 1e-13`).
pub fn integrate(t: usize, j: usize, tol: f64) -> Result<f64> {
    Ok(integrate_adaptive(t, j, tol)?.value)
}

pub fn integrate_adaptive(t: usize, j: usize, tol: f64) -> Result<gauss::Adaptive> {
    check_pair(t, j)?;
    check_tol(tol, 1e-13)?;
    gauss::adaptive(&|u| integrand(t, j, u), 0.0, 1.0, tol, MAX_PANELS)
}

/// Composite rule on `panels` equal panels, with the difference against
/// twice as many panels as an error estimate.
pub fn integrate_fixed(t: usize, j: usize, panels: usize) -> Result<(f64, f64)> {
    check_pair(t, j)?;
    if panels == 0 {
        return Err(SeriesError::InvalidArgument(
            "need at least one panel".into(),
        ));
    }
    let f = |u| integrand(t, j, u);
    let coarse = gauss::composite(&f, 0.0, 1.0, panels);
    let fine = gauss::composite(&f, 0.0, 1.0, 2 * panels);
    Ok((coarse, (coarse - fine).abs()))
}

/// Both sides of the integral-series identity for one `(T, j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralCheck {
    pub t: usize,
    pub j: usize,
    pub integral_value: f64,
    pub series_value: f64,
    pub discrepancy: f64,
    /// Quadrature tolerance plus the series error bound.
    pub tolerance: f64,
}

impl IntegralCheck {
    pub fn passed(&self) -> bool {
        self.discrepancy <= self.tolerance
    }
}

pub fn integral_series_check(t: usize, j: usize, tol: f64) -> Result<IntegralCheck> {
    integral_series_check_with(&Evaluator::default(), t, j, tol)
}

pub fn integral_series_check_with(
    ev: &Evaluator,
    t: usize,
    j: usize,
    tol: f64,
) -> Result<IntegralCheck> {
    let integral_value = integrate(t, j, tol)?;
    let series = ev.evaluate(&difference_vector(t, j)?, tol, Method::Accelerated)?;
    Ok(IntegralCheck {
        t,
        j,
        integral_value,
        series_value: series.value,
        discrepancy: (integral_value - series.value).abs(),
        tolerance: tol + series.error_bound,
    })
}

/// `sum_{j=1}^{T-1} j * integral(T, j)`, which reconstructs `ln T`.
pub fn decomposition_check(t: usize, tol: f64) -> Result<f64> {
    if t < 2 {
        return Err(SeriesError::InvalidArgument(format!(
            "need T >= 2, got {t}"
        )));
    }
    check_tol(tol, 1e-12)?;
    let per = tol / t as f64;
    (1..t).try_fold(0.0, |acc, j| Ok(acc + j as f64 * integrate(t, j, per)?))
}

fn sqrt3() -> f64 {
    3.0f64.sqrt()
}

/// `pi = 3 sqrt(3) S_3(1, -1, 0)`, with the series evaluated to `tol / 6`.
/// Error bound scaled accordingly.
pub fn pi_series(ev: &Evaluator, tol: f64, method: Method) -> Result<EvalResult> {
    check_tol(tol, 1e-12)?;
    let scale = 3.0 * sqrt3();
    let r = ev.evaluate(&difference_vector(3, 1)?, tol / 6.0, method)?;
    Ok(EvalResult {
        value: scale * r.value,
        error_bound: scale * r.error_bound + 4.0 * f64::EPSILON * scale * r.value,
        ..r
    })
}

pub fn pi_estimate(tol: f64) -> Result<f64> {
    Ok(pi_series(&Evaluator::default(), tol, Method::Accelerated)?.value)
}

/// Closed form of `S_3(1, -1, 0)` from the antiderivative
/// `(2/sqrt 3) atan((2u+1)/sqrt 3)` of `(u-1)/(u^3-1)`.
pub fn pi_series_arctan_value() -> f64 {
    let s = sqrt3();
    2.0 / s * (s.atan() - (1.0 / s).atan())
}

/// `3 sqrt(3)` times [`pi_series_arctan_value`], i.e.
/// `6 (atan(sqrt 3) - atan(1/sqrt 3))`.
pub fn pi_arctan() -> f64 {
    let s = sqrt3();
    6.0 * (s.atan() - (1.0 / s).atan())
}

/// Lower and upper bounds on `pi` from `k >= 2` blocks of `S_3(1, -1, 0)`:
/// every block is positive, so the partial sum is below the limit and the
/// tail bound caps it from above.
pub fn pi_bracket(k: u64) -> Result<(f64, f64)> {
    let v = difference_vector(3, 1)?;
    let ev = Evaluator::default();
    let partial = ev.partial_sum_exact(&v, k)?;
    let tail = crate::evaluator::tail_bound_exact(&v, k)?;
    let scale = 3.0 * sqrt3();
    let lo = scale * crate::rational::to_f64(&partial);
    let hi = scale * crate::rational::to_f64(&(partial + tail));
    // widen by the rounding of the scale and conversions
    Ok((
        lo * (1.0 - 4.0 * f64::EPSILON),
        hi * (1.0 + 4.0 * f64::EPSILON),
    ))
}

#[cfg(test)]
#[allow(clippy::approx_constant, clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::evaluator::partial_sum_exact;
    use crate::rational::{frac, ExactRational};
    use std::f64::consts::{LN_2, PI};

    const PI_OVER_3_SQRT3: f64 = 0.604_599_788_078_072_616_864_692_752_547_385_244;
    // integral_0^1 u / (1 + u + u^2 + u^3) du, mpmath
    const I_4_2: f64 = 0.219_412_286_558_737_827_453_522_392_545_318_5;
    const LN: [f64; 9] = [
        0.0,
        0.0,
        0.693_147_180_559_945_309_417_232_121_458_176_568,
        1.098_612_288_668_109_691_395_245_236_922_525_704,
        1.386_294_361_119_890_618_834_464_242_916_353_136,
        1.609_437_912_434_100_374_600_759_333_226_187_639,
        1.791_759_469_228_055_000_812_477_358_380_702_272,
        1.945_910_149_055_313_305_105_352_743_443_179_729,
        2.079_441_541_679_835_928_251_696_364_374_529_704,
    ];

    #[test]
    fn integrand_values() {
        for t in 2..10 {
            for j in 1..t {
                assert!((integrand(t, j, 1.0) - 1.0 / t as f64).abs() < 1e-16);
            }
        }
        assert_eq!(integrand(2, 1, 0.0), 1.0);
        assert!((integrand(2, 1, 0.5) - 2.0 / 3.0).abs() < 1e-16);
    }

    /// The closed-form integrand, evaluated exactly at the rational value of
    /// a double, against the simplified floating form.
    #[test]
    fn simplified_integrand_matches_exact_original() {
        for &(t, j) in &[(2usize, 1usize), (3, 1), (3, 2), (5, 4), (8, 3), (8, 7)] {
            for i in 0..1000 {
                let u = (1.0 - 1e-6) * i as f64 / 999.0;
                let ur = ExactRational::from_float(u).unwrap();
                let pow = |e: usize| (0..e).fold(frac(1, 1), |acc, _| acc * &ur);
                let exact = (pow(j) - pow(j - 1)) / (pow(t) - frac(1, 1));
                let got = integrand(t, j, u);
                let want = crate::rational::to_f64(&exact);
                assert!((got - want).abs() <= 1e-14, "T={t} j={j} u={u}");
                assert!(got >= 0.0);
            }
            assert!(integrand(t, j, 1.0).is_finite());
        }
    }

    #[test]
    fn integrals() {
        assert!((integrate(2, 1, 1e-10).unwrap() - LN_2).abs() < 1e-10);
        assert!((integrate(3, 1, 1e-10).unwrap() - PI_OVER_3_SQRT3).abs() < 1e-10);
        let series = Evaluator::default()
            .evaluate(
                &difference_vector(4, 2).unwrap(),
                1e-10,
                Method::Accelerated,
            )
            .unwrap();
        let got = integrate(4, 2, 1e-10).unwrap();
        assert!((got - series.value).abs() <= 2e-10);
        assert!((got - I_4_2).abs() <= 1e-10);
    }

    #[test]
    fn large_modulus_integrates() {
        let r = integrate_adaptive(64, 63, 1e-12).unwrap();
        let series = Evaluator::default()
            .evaluate(
                &difference_vector(64, 63).unwrap(),
                1e-12,
                Method::Accelerated,
            )
            .unwrap();
        assert!((r.value - series.value).abs() < 2e-12);
    }

    #[test]
    fn argument_checks() {
        assert!(integrate(1, 1, 1e-9).is_err());
        assert!(integrate(3, 3, 1e-9).is_err());
        assert!(integrate(3, 0, 1e-9).is_err());
        assert!(integrate(3, 1, 1e-14).is_err());
        assert!(decomposition_check(3, 1e-13).is_err());
        assert!(pi_estimate(1e-13).is_err());
        assert!(integrate_fixed(3, 1, 0).is_err());
    }

    #[test]
    fn series_checks() {
        for (t, j) in [(3, 1), (2, 1), (8, 7)] {
            let c = integral_series_check(t, j, 1e-9).unwrap();
            assert!(c.discrepancy <= 2e-9, "T={t} j={j}: {c:?}");
            assert!(c.passed());
        }
        let c = integral_series_check(2, 1, 1e-9).unwrap();
        assert!((c.integral_value - LN_2).abs() < 1e-9);
        assert!((c.series_value - LN_2).abs() < 1e-9);
    }

    #[test]
    fn decompositions() {
        for t in [2usize, 3, 5] {
            let got = decomposition_check(t, 1e-10).unwrap();
            assert!((got - LN[t]).abs() < 1e-9, "T={t}: {got}");
        }
    }

    #[test]
    fn pi_routes() {
        let p = pi_estimate(1e-9).unwrap();
        assert!((p - std::f64::consts::PI).abs() < 1e-8);
        assert!((pi_arctan() - PI).abs() <= 8.0 * f64::EPSILON);
        assert!((pi_series_arctan_value() - PI_OVER_3_SQRT3).abs() <= 4.0 * f64::EPSILON);
        assert!((pi_arctan() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn pi_partials_bracket_pi() {
        // 3 blocks: (1 - 1/2) + (1/4 - 1/5) + (1/7 - 1/8)
        let v = difference_vector(3, 1).unwrap();
        assert_eq!(
            partial_sum_exact(&v, 3).unwrap(),
            frac(1, 2) + frac(1, 20) + frac(1, 56)
        );
        for k in [2u64, 3, 10, 1000] {
            let (lo, hi) = pi_bracket(k).unwrap();
            assert!(lo < PI && PI < hi, "k={k}: [{lo}, {hi}]");
        }
    }

    #[test]
    fn fixed_panels_converge() {
        let (v1, e1) = integrate_fixed(3, 1, 1).unwrap();
        let (v4, _) = integrate_fixed(3, 1, 4).unwrap();
        assert!((v4 - PI_OVER_3_SQRT3).abs() < 1e-14);
        assert!((v1 - PI_OVER_3_SQRT3).abs() <= 2.0 * e1 + 1e-15);
    }
}
