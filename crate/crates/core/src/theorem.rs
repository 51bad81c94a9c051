//! The sharpened Ball inequality
//!
//! ```text
//! I(p) <= C(p) √(3/π) / √p <= 1 / √p <= √2 / √p,   p >= 1,
//! ```
//!
//! with `C(p) = √(π/3)` up to the crossover `p0` and
//! `C(p) = 1 + (√5/6)^(2p-1) √p / ((p - 1/2) √(3π))` beyond it. The second
//! branch is the crude tail bound outside `|t| <= 6/√5` divided by the
//! Gaussian bound `√(3/π)/√p` on the central window.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::bspline::integral_exact;
use crate::error::{Error, Result};
use crate::kernel::{log_sinc_remainder, PValue};
use crate::quadrature::{integral_numeric, IntegralEstimate, QuadratureConfig};

/// Bracket searched for the crossover.
pub const P0_BRACKET: (f64, f64) = (1.0, 3.0);

/// Derived constants of the inequality chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremConstants {
    /// `√(3/π)`, the limit of `√p I(p)`.
    pub sqrt_3_over_pi: f64,
    /// `√(π/3)`, the correction factor on `[1, p0]`.
    pub sqrt_pi_over_3: f64,
    /// `6/√5`, half-width of the window carrying the Gaussian bound.
    pub central_radius: f64,
    /// `(1 - √(3/π)) π`, right-hand side of the crossover equation.
    pub rhs_p0: f64,
    pub p0: f64,
}

impl TheoremConstants {
    /// Computes every constant, solving for `p0` to `1e-12`.
    pub fn compute() -> Result<Self> {
        let sqrt_3_over_pi = (3.0 / PI).sqrt();
        Ok(TheoremConstants {
            sqrt_3_over_pi,
            sqrt_pi_over_3: (PI / 3.0).sqrt(),
            central_radius: 6.0 / 5f64.sqrt(),
            rhs_p0: (1.0 - sqrt_3_over_pi) * PI,
            p0: solve_p0(1e-12)?,
        })
    }
}

/// `√2 / √p`, Ball's original bound.
pub fn ball_bound(p: PValue) -> f64 {
    (2.0 / p.get()).sqrt()
}

/// `1 / √p`, the middle term of the chain.
pub fn unit_bound(p: PValue) -> f64 {
    1.0 / p.get().sqrt()
}

/// `√(3/π) / √p`, the bound on the integral over `|t| <= 6/√5`.
pub fn central_gaussian_bound(p: PValue) -> f64 {
    (3.0 / PI).sqrt() / p.get().sqrt()
}

/// `exp(-t²/3) - (sin t / t)²` on `|t| <= 6/√5`.
///
/// Evaluated as `sinc² · expm1(-2 (ln sinc + t²/6))` so that the tiny gap
/// near the origin is not lost to cancellation.
pub fn majorant_gap(t: f64) -> Result<f64> {
    let radius = 6.0 / 5f64.sqrt();
    if !(t.abs() <= radius) {
        return Err(Error::domain("majorant gap is defined on |t| <= 6/sqrt(5)", t));
    }
    let rem = log_sinc_remainder(t);
    let sinc_sq = (2.0 * (rem - t * t / 6.0)).exp();
    Ok(sinc_sq * (-2.0 * rem).exp_m1())
}

/// `(√5/6)^(2p-1) √p / (p - 1/2)`: the crude tail bound at `6/√5`
/// relative to the central bound, times `√(3π)`.
pub fn tail_to_central(p: f64) -> f64 {
    (5f64.sqrt() / 6.0).powf(2.0 * p - 1.0) * p.sqrt() / (p - 0.5)
}

/// `h(p) = tail_to_central(p) - (1 - √(3/π)) π`; its root is `p0`.
pub fn crossover_residual(p: f64) -> f64 {
    tail_to_central(p) - (1.0 - (3.0 / PI).sqrt()) * PI
}

/// The correction factor `C(p)`.
pub fn correction_factor(p: PValue, consts: &TheoremConstants) -> f64 {
    let p = p.get();
    if p <= consts.p0 {
        consts.sqrt_pi_over_3
    } else {
        1.0 + tail_to_central(p) / (3.0 * PI).sqrt()
    }
}

/// `C(p) √(3/π) / √p`. On `[1, p0]` this is exactly `1/√p`.
pub fn improved_bound(p: PValue, consts: &TheoremConstants) -> f64 {
    correction_factor(p, consts) * consts.sqrt_3_over_pi / p.get().sqrt()
}

/// Root of [`crossover_residual`] on `[1, 3]` by bisection, to within `tol`.
pub fn solve_p0(tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::domain("root tolerance must be positive", tol));
    }
    solve_bracketed(crossover_residual, P0_BRACKET.0, P0_BRACKET.1, tol)
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn solve_bracketed<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f(a), f(b));
    if !(fa.signum() * fb.signum() < 0.0) {
        return Err(Error::BracketFailure {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }
    let a_positive = fa > 0.0;
    while b - a > 2.0 * tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm > 0.0) == a_positive {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// `I(p)`: the exact rational oracle at integer `p`, quadrature otherwise.
///
/// The oracle's error bound is zero when the rational is representable,
/// else one unit of relative machine epsilon.
pub fn evaluate_integral(p: PValue, cfg: &QuadratureConfig) -> Result<IntegralEstimate> {
    match p.as_integer() {
        Some(n) => {
            let exact = integral_exact(n)?;
            Ok(match exact.to_f64_exact() {
                Some(x) => IntegralEstimate::exact(x, 0.0),
                None => {
                    let x = exact.to_f64();
                    IntegralEstimate::exact(x, f64::EPSILON * x.abs())
                }
            })
        }
        None => integral_numeric(p, cfg),
    }
}

/// `r(p) = I(p) √p / √(3/π)`, which tends to 1.
pub fn asymptotic_ratio(p: PValue, cfg: &QuadratureConfig) -> Result<f64> {
    let est = evaluate_integral(p, cfg)?;
    Ok(ratio_of(p, est.value))
}

fn ratio_of(p: PValue, integral: f64) -> f64 {
    integral * p.get().sqrt() / (3.0 / PI).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// One evaluated instance of the inequality chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub p: PValue,
    pub integral: IntegralEstimate,
    pub c_of_p: f64,
    pub improved_bound: f64,
    pub unit_bound: f64,
    pub ball_bound: f64,
    /// `improved_bound - (I + error_bound)`.
    pub margin1: f64,
    /// `unit_bound - improved_bound`.
    pub margin2: f64,
    /// `ball_bound - unit_bound`.
    pub margin3: f64,
    pub ratio: f64,
    pub verdict: Verdict,
}

/// Evaluates the chain at `p`.
pub fn certify(p: PValue, cfg: &QuadratureConfig, consts: &TheoremConstants) -> Result<Certificate> {
    certify_scaled(p, cfg, consts, 1.0)
}

/// As [`certify`] with `C(p)` multiplied by `c_scale`. A scale below one
/// must make the certificate fail at `p = 1`; used to show the check can
/// fail at all.
pub fn certify_scaled(
    p: PValue,
    cfg: &QuadratureConfig,
    consts: &TheoremConstants,
    c_scale: f64,
) -> Result<Certificate> {
    let integral = evaluate_integral(p, cfg)?;
    let c_of_p = c_scale * correction_factor(p, consts);
    let improved = c_scale * improved_bound(p, consts);
    let unit = unit_bound(p);
    let ball = ball_bound(p);
    let margin1 = improved - integral.upper();
    let margin2 = unit - improved;
    let margin3 = ball - unit;
    let verdict = if margin1 >= 0.0 && margin2 >= 0.0 && margin3 >= 0.0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Certificate {
        p,
        integral,
        c_of_p,
        improved_bound: improved,
        unit_bound: unit,
        ball_bound: ball,
        margin1,
        margin2,
        margin3,
        ratio: ratio_of(p, integral.value),
        verdict,
    })
}

/// Certificates for every `p` in `ps`, in input order.
pub fn certify_grid(
    ps: &[PValue],
    cfg: &QuadratureConfig,
    consts: &TheoremConstants,
    c_scale: f64,
) -> Result<Vec<Certificate>> {
    ps.par_iter()
        .map(|&p| certify_scaled(p, cfg, consts, c_scale))
        .collect()
}

/// `from, from + step, ...` up to `to` inclusive, each point snapped to
/// twelve decimals so that `1 + 100 * 0.01` lands on `2`.
pub fn linear_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::domain("grid step must be positive", step));
    }
    if !(from <= to) || !from.is_finite() || !to.is_finite() {
        return Err(Error::domain("grid needs finite from <= to", from));
    }
    let count = ((to - from) / step + 1e-9).floor() as u64;
    Ok((0..=count)
        .map(|i| {
            let x = from + i as f64 * step;
            (x * 1e12).round() / 1e12
        })
        .collect())
}

/// `{1.00, 1.01, ..., 5.00} ∪ {6, ..., 20} ∪ {50, 100}`.
pub fn certification_grid() -> Vec<PValue> {
    let fine = (100..=500).map(|i| i as f64 / 100.0);
    let integers = (6..=20).map(|n| n as f64);
    fine.chain(integers)
        .chain([50.0, 100.0])
        .map(|p| PValue::new(p).expect("grid points are >= 1"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(p: f64) -> PValue {
        PValue::new(p).unwrap()
    }

    fn consts() -> TheoremConstants {
        TheoremConstants::compute().unwrap()
    }

    #[test]
    fn constants() {
        let c = consts();
        assert!((c.sqrt_3_over_pi * c.sqrt_pi_over_3 - 1.0).abs() <= 1e-15);
        assert!((c.sqrt_3_over_pi - 0.9772050).abs() < 1e-7);
        assert!((c.sqrt_pi_over_3 - 1.0233267).abs() < 1e-7);
        assert!((c.central_radius - 2.6832816).abs() < 1e-7);
        assert!((c.rhs_p0 - 0.0716125).abs() < 1e-7);
        assert!((1.84135..=1.84145).contains(&c.p0));
    }

    #[test]
    fn ball_bound_examples() {
        assert_eq!(ball_bound(pv(1.0)), 2f64.sqrt());
        assert_eq!(ball_bound(pv(2.0)), 1.0);
        assert_eq!(ball_bound(pv(8.0)), 0.5);
    }

    #[test]
    fn central_bound_examples() {
        assert!((central_gaussian_bound(pv(1.0)) - 0.9772050).abs() < 1e-7);
        assert!((central_gaussian_bound(pv(3.0)) - (1.0 / PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn majorant_examples() {
        assert_eq!(majorant_gap(0.0).unwrap(), 0.0);
        let g1 = majorant_gap(1.0).unwrap();
        assert!((g1 - ((-1.0f64 / 3.0).exp() - 1f64.sin().powi(2))).abs() < 1e-15);
        assert!((g1 - 0.0084579).abs() < 1e-7);
        let r = 6.0 / 5f64.sqrt();
        let edge = majorant_gap(r).unwrap();
        assert!((edge - ((-2.4f64).exp() - (r.sin() / r).powi(2))).abs() < 1e-15);
        assert!(edge > 0.0);
        assert!(majorant_gap(2.7).is_err());
        assert!(majorant_gap(-2.7).is_err());
    }

    #[test]
    fn correction_factor_examples() {
        let c = consts();
        assert_eq!(correction_factor(pv(1.0), &c), c.sqrt_pi_over_3);
        assert_eq!(improved_bound(pv(1.0), &c), 1.0);
        let c2 = correction_factor(pv(2.0), &c);
        let direct = 1.0 + (5f64.sqrt() / 6.0).powi(3) * 2f64.sqrt() / 1.5 / (3.0 * PI).sqrt();
        assert!((c2 - direct).abs() < 1e-15);
        assert!((c2 - 1.0158959).abs() < 5e-7);
        assert!((correction_factor(pv(200.0), &c) - 1.0).abs() < 1e-30);
    }

    #[test]
    fn branches_meet_at_crossover() {
        let c = consts();
        let second = 1.0 + tail_to_central(c.p0) / (3.0 * PI).sqrt();
        assert!((second - c.sqrt_pi_over_3).abs() < 1e-9);
        let below = 1.0 + tail_to_central(c.p0 - 0.01) / (3.0 * PI).sqrt();
        assert!(below > c.sqrt_pi_over_3);
        assert!(correction_factor(pv(c.p0 + 0.01), &c) < c.sqrt_pi_over_3);
    }

    #[test]
    fn crossover_residual_signs() {
        assert!(crossover_residual(1.0) > 0.0);
        assert!(crossover_residual(3.0) < 0.0);
        assert!(crossover_residual(2.0) < 0.0);
        let h = crossover_residual(1.8414);
        assert!(h > 0.0 && h < 1e-6);
    }

    #[test]
    fn p0_to_four_decimals() {
        let p0 = solve_p0(1e-10).unwrap();
        assert_eq!((p0 * 1e4).round() / 1e4, 1.8414);
        assert!(solve_p0(0.0).is_err());
        let loose = solve_p0(1e-8).unwrap();
        assert!((loose - p0).abs() < 2e-8);
    }

    #[test]
    fn bracket_failure_reported() {
        let r = solve_bracketed(|x| x * x + 1.0, -1.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::BracketFailure { .. })));
    }

    #[test]
    fn exact_oracle_for_integers() {
        let cfg = QuadratureConfig::default();
        let one = evaluate_integral(pv(1.0), &cfg).unwrap();
        assert_eq!((one.value, one.error_bound), (1.0, 0.0));
        let two = evaluate_integral(pv(2.0), &cfg).unwrap();
        assert!((two.value - 2.0 / 3.0).abs() <= two.error_bound);
        assert!(two.error_bound > 0.0);
    }

    #[test]
    fn ratio_examples() {
        let cfg = QuadratureConfig::default();
        let r1 = asymptotic_ratio(pv(1.0), &cfg).unwrap();
        assert!((r1 - (PI / 3.0).sqrt()).abs() < 1e-15);
        assert!((asymptotic_ratio(pv(2.0), &cfg).unwrap() - 0.9648022).abs() < 2e-4);
        assert!((asymptotic_ratio(pv(4.0), &cfg).unwrap() - 0.9810930).abs() < 2e-4);
    }

    #[test]
    fn certificate_examples() {
        let cfg = QuadratureConfig::default();
        let c = consts();
        let one = certify(pv(1.0), &cfg, &c).unwrap();
        assert_eq!(one.verdict, Verdict::Pass);
        assert!(one.margin1.abs() < 1e-8);
        assert!(one.margin3 > 0.0);

        let two = certify(pv(2.0), &cfg, &c).unwrap();
        assert_eq!(two.verdict, Verdict::Pass);
        assert!((two.improved_bound - 0.7019723).abs() < 1e-6);
        assert!(two.integral.value < two.improved_bound);
        assert!(two.improved_bound < two.unit_bound);

        let mid = certify(pv(1.5), &cfg, &c).unwrap();
        assert_eq!(mid.verdict, Verdict::Pass);
        assert!((mid.improved_bound - 1.0 / 1.5f64.sqrt()).abs() < 1e-15);
        assert!(mid.integral.lower() >= 2.0 / 3.0 && mid.integral.upper() <= 1.0);
    }

    #[test]
    fn lowered_factor_fails() {
        let cfg = QuadratureConfig::default();
        let c = consts();
        let cert = certify_scaled(pv(1.0), &cfg, &c, 0.95).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        assert!(cert.margin1 < 0.0);
    }

    #[test]
    fn grids() {
        let g = linear_grid(1.0, 2.0, 0.01).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g[100], 2.0);
        assert_eq!(g[37], 1.37);
        assert_eq!(linear_grid(1.0, 1.0, 0.5).unwrap(), vec![1.0]);
        assert!(linear_grid(2.0, 1.0, 0.5).is_err());
        assert!(linear_grid(1.0, 2.0, 0.0).is_err());
        let c = certification_grid();
        assert_eq!(c.len(), 401 + 15 + 2);
        assert_eq!(c[100].as_integer(), Some(2));
    }

    #[test]
    fn verdict_tokens() {
        assert_eq!(Verdict::Pass.to_string(), "pass");
        assert_eq!(Verdict::Fail.to_string(), "fail");
    }
}
