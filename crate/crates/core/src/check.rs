//! Self-check suite: every structural property of the library, evaluated
//! at desk scale and reported one line per property.

use std::f64::consts::PI;

use crate::bspline::{bspline_recursive, bspline_value, integral_exact, BSplineOrder, PiecewiseBSpline};
use crate::error::Result;
use crate::kernel::{integrand, PValue};
use crate::quadrature::{
    central_part, integral_numeric, integrate_interval, tail_bound_crude, tail_enclosure, QuadratureConfig,
};
use crate::rational::ExactRational;
use crate::theorem::{
    asymptotic_ratio, central_gaussian_bound, certification_grid, certify_grid, correction_factor,
    majorant_gap, solve_p0, tail_to_central, TheoremConstants, Verdict,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("exact-oracle-table", exact_oracle_table),
    ("plancherel-identity", plancherel_identity),
    ("closed-form-equals-recursion", closed_form_equals_recursion),
    ("bspline-symmetry-and-support", bspline_symmetry_and_support),
    ("partition-of-unity", partition_of_unity),
    ("integrand-evenness-and-bounds", integrand_evenness_and_bounds),
    ("quadrature-oracle-containment", quadrature_oracle_containment),
    ("monotonicity-in-p", monotonicity_in_p),
    ("sandwich-between-integers", sandwich_between_integers),
    ("tail-enclosure", tail_enclosure_checks),
    ("p0-reproduction", p0_reproduction),
    ("crossover-consistency", crossover_consistency),
    ("correction-factor-monotone", correction_factor_monotone),
    ("majorant-nonnegative", majorant_nonnegative),
    ("central-gaussian-bound", central_bound),
    ("inequality-chain-grid", inequality_chain_grid),
    ("asymptotic-ratio", asymptotic_ratio_behaviour),
];

/// Names of all checks, in run order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = match check() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome { name, passed, detail }
        })
        .collect()
}

fn pv(p: f64) -> PValue {
    PValue::new(p).expect("check grids stay at p >= 1")
}

fn order(n: u32) -> BSplineOrder {
    BSplineOrder::new(n).expect("check orders are >= 1")
}

fn rational_grid(limit: i64, den: i64) -> impl Iterator<Item = ExactRational> {
    (-limit * den..=limit * den).map(move |k| ExactRational::new(k, den))
}

fn exact_oracle_table() -> Result<(bool, String)> {
    let expected = [(1, 1), (2, 3), (11, 20), (151, 315)];
    let mut ok = true;
    for (n, (num, den)) in (1..=4).zip(expected) {
        ok &= integral_exact(n)? == ExactRational::new(num, den);
    }
    Ok((ok, "I(1..4) = 1, 2/3, 11/20, 151/315".into()))
}

fn plancherel_identity() -> Result<(bool, String)> {
    let zero = ExactRational::zero();
    let bad: Vec<u32> = (1..=15)
        .filter(|&n| integral_exact(n).map(|v| v != bspline_value(order(2 * n), &zero)).unwrap_or(true))
        .collect();
    Ok((bad.is_empty(), format!("n = 1..15, mismatches {bad:?}")))
}

fn closed_form_equals_recursion() -> Result<(bool, String)> {
    let mut compared = 0;
    for n in 1..=8 {
        let spline = PiecewiseBSpline::new(order(n));
        for x in rational_grid(5, 12) {
            if spline.eval(&x) != bspline_value(order(n), &x) {
                return Ok((false, format!("order {n} differs at x = {x}")));
            }
            compared += 1;
        }
    }
    let spot = bspline_recursive(order(4), &ExactRational::new(1, 2)) == ExactRational::new(23, 48);
    Ok((spot, format!("{compared} exact comparisons, n <= 8")))
}

fn bspline_symmetry_and_support() -> Result<(bool, String)> {
    for n in 1..=10u32 {
        let half = ExactRational::new(n as i64, 2);
        for x in rational_grid(6, 8) {
            let v = bspline_value(order(n), &x);
            if v != bspline_value(order(n), &-x.clone()) {
                return Ok((false, format!("order {n} asymmetric at {x}")));
            }
            let ax = x.abs();
            if (ax > half && !v.is_zero()) || (ax < half && !v.is_positive()) {
                return Ok((false, format!("order {n} support wrong at {x}")));
            }
        }
    }
    Ok((true, "orders 1..10, |x| <= 6 step 1/8".into()))
}

fn partition_of_unity() -> Result<(bool, String)> {
    for n in 1..=10u32 {
        for j in 0..16 {
            let x = ExactRational::new(j, 16);
            let mut sum = ExactRational::zero();
            for k in -(n as i64)..=(n as i64) {
                sum = sum + bspline_value(order(n), &(&x - &ExactRational::from_integer(k)));
            }
            if sum != ExactRational::one() {
                return Ok((false, format!("order {n}, x = {x}: sum = {sum}")));
            }
        }
    }
    Ok((true, "orders 1..10, x in [0, 1) step 1/16".into()))
}

fn integrand_evenness_and_bounds() -> Result<(bool, String)> {
    for i in 1..=2000 {
        let t = i as f64 * 0.0137;
        for &p in &[1.0, 1.5, 3.0, 12.5] {
            let v = integrand(t, pv(p));
            if v != integrand(-t, pv(p)) || !(0.0..1.0).contains(&v) {
                return Ok((false, format!("t = {t}, p = {p}: {v}")));
            }
        }
    }
    Ok((integrand(0.0, pv(2.0)) == 1.0, "2000 abscissae, 4 exponents".into()))
}

fn quadrature_oracle_containment() -> Result<(bool, String)> {
    let cfg = QuadratureConfig::default();
    let mut worst = 0.0f64;
    for n in 1..=20u32 {
        let est = integral_numeric(pv(n as f64), &cfg)?;
        let exact = integral_exact(n)?.to_f64();
        if (est.value - exact).abs() > est.error_bound || est.error_bound > 1e-8 {
            return Ok((false, format!("n = {n}: {} vs {exact} +- {:e}", est.value, est.error_bound)));
        }
        worst = worst.max(est.error_bound);
    }
    Ok((true, format!("n = 1..20, largest error bound {worst:e}")))
}

fn monotonicity_in_p() -> Result<(bool, String)> {
    let cfg = QuadratureConfig::default();
    let ps: Vec<f64> = (10..=100).map(|i| i as f64 / 10.0).collect();
    let mut prev: Option<(f64, f64)> = None;
    for &p in &ps {
        let est = integral_numeric(pv(p), &cfg)?;
        if let Some((v, e)) = prev {
            if !(v - est.value > e + est.error_bound) {
                return Ok((false, format!("not separated below p = {p}")));
            }
        }
        prev = Some((est.value, est.error_bound));
    }
    Ok((true, "p = 1.0..10.0 step 0.1".into()))
}

fn sandwich_between_integers() -> Result<(bool, String)> {
    let cfg = QuadratureConfig::default();
    for &p in &[1.25, 1.5, 2.5, 3.7, 6.3] {
        let est = integral_numeric(pv(p), &cfg)?;
        let floor = p.floor() as u32;
        let upper = integral_exact(floor)?.to_f64();
        let lower = integral_exact(floor + 1)?.to_f64();
        if !(lower - est.error_bound <= est.value && est.value <= upper + est.error_bound) {
            return Ok((false, format!("p = {p}: {} outside [{lower}, {upper}]", est.value)));
        }
        if est.lower() > 1.0 {
            return Ok((false, format!("p = {p} exceeds I(1)")));
        }
    }
    Ok((true, "p in {1.25, 1.5, 2.5, 3.7, 6.3}".into()))
}

fn tail_enclosure_checks() -> Result<(bool, String)> {
    let cfg = QuadratureConfig::default();
    for &k in &[1u64, 5, 10, 100, 10_000] {
        for &p in &[1.0, 1.3, 2.0, 4.5, 9.0] {
            let e = tail_enclosure(k, pv(p))?;
            if e.low > e.high || e.high > tail_bound_crude(k as f64 * PI, p)? {
                return Ok((false, format!("K = {k}, p = {p}: {e:?}")));
            }
        }
    }
    for n in 1..=3u32 {
        for &k in &[10u64, 100] {
            let central = central_part(pv(n as f64), k, 1e-15, cfg.panel_order);
            let tail = integral_exact(n)?.to_f64() - central.value;
            let e = tail_enclosure(k, pv(n as f64))?;
            let slack = central.residual + 8.0 * f64::EPSILON;
            if tail < e.low - slack || tail > e.high + slack {
                return Ok((false, format!("n = {n}, K = {k}: tail {tail:e} not in {e:?}")));
            }
        }
    }
    Ok((true, "high <= crude bound; oracle tail enclosed for n = 1..3".into()))
}

fn p0_reproduction() -> Result<(bool, String)> {
    let p0 = solve_p0(1e-10)?;
    Ok(((1.84135..=1.84145).contains(&p0), format!("p0 = {p0:.12}")))
}

fn crossover_consistency() -> Result<(bool, String)> {
    let consts = TheoremConstants::compute()?;
    let p0 = solve_p0(1e-10)?;
    let tail_branch = |p: f64| 1.0 + tail_to_central(p) / (3.0 * PI).sqrt();
    let meets = (tail_branch(p0) - consts.sqrt_pi_over_3).abs() <= 1e-9;
    let after = (1..=50).all(|i| tail_branch(p0 + i as f64 * 0.01) < consts.sqrt_pi_over_3);
    let before = (1..=50).all(|i| tail_branch(p0 - i as f64 * 0.01) > consts.sqrt_pi_over_3);
    Ok((meets && after && before, format!("branches meet at p0 = {p0:.10}")))
}

fn correction_factor_monotone() -> Result<(bool, String)> {
    let consts = TheoremConstants::compute()?;
    let mut prev = f64::INFINITY;
    for i in 0..=10_000 {
        let p = 1.0 + i as f64 * 0.01;
        let c = correction_factor(pv(p), &consts);
        if c > prev || c < 1.0 || c > consts.sqrt_pi_over_3 {
            return Ok((false, format!("C({p}) = {c}")));
        }
        prev = c;
    }
    Ok((true, "p = 1..101 step 0.01".into()))
}

fn majorant_nonnegative() -> Result<(bool, String)> {
    let radius = 6.0 / 5f64.sqrt();
    let n = 100_000;
    let (mut min, mut argmin) = (f64::INFINITY, 0.0);
    for i in 0..n {
        let t = radius * i as f64 / (n - 1) as f64;
        let g = majorant_gap(t)?;
        if g < min {
            min = g;
            argmin = t;
        }
    }
    Ok((min >= -1e-15 && argmin == 0.0, format!("min {min:e} at t = {argmin}")))
}

fn central_bound() -> Result<(bool, String)> {
    let cfg = QuadratureConfig::with_abs_tol(1e-13);
    let radius = 6.0 / 5f64.sqrt();
    let mut worst = f64::INFINITY;
    for &p in &[1.0, 1.5, 2.0, 3.0, 5.0, 10.0] {
        let (v, err) = integrate_interval(pv(p), 0.0, radius, &cfg)?;
        let gap = central_gaussian_bound(pv(p)) - (v + err);
        if gap < 0.0 {
            return Ok((false, format!("p = {p}: central part {v} above bound")));
        }
        worst = worst.min(gap);
    }
    Ok((true, format!("smallest gap {worst:e}")))
}

fn inequality_chain_grid() -> Result<(bool, String)> {
    let consts = TheoremConstants::compute()?;
    let grid = certification_grid();
    let certs = certify_grid(&grid, &QuadratureConfig::default(), &consts, 1.0)?;
    for c in &certs {
        let strict = c.p.get() == 1.0 || c.margin1 > 0.0;
        if c.verdict != Verdict::Pass || !strict {
            return Ok((false, format!("p = {}: margins {:e} {:e} {:e}", c.p, c.margin1, c.margin2, c.margin3)));
        }
    }
    Ok((true, format!("{} grid points pass", certs.len())))
}

fn asymptotic_ratio_behaviour() -> Result<(bool, String)> {
    let cfg = QuadratureConfig::default();
    let r = |p: f64| asymptotic_ratio(pv(p), &cfg);
    let r2 = r(2.0)?;
    let r4 = r(4.0)?;
    let r100 = r(100.0)?;
    let mut ok = (r2 - 0.9648022).abs() <= 2e-4 && (r4 - 0.9810930).abs() <= 2e-4;
    ok &= (r100 - 1.0).abs() <= 5e-3;
    let mut prev = 0.0;
    for n in 2..=50 {
        let v = r(n as f64)?;
        ok &= v > prev && (0.95..=1.03).contains(&v);
        prev = v;
    }
    Ok((ok, format!("r(2) = {r2:.7}, r(4) = {r4:.7}, r(100) = {r100:.7}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names = check_names();
        let n = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), n);
    }
}
