//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sincpow::bspline::{bspline_recursive, bspline_value, integral_exact, BSplineOrder};
use sincpow::quadrature::{
    central_part, integral_numeric, integrate_interval, tail_bound_crude, tail_enclosure, QuadratureConfig,
};
use sincpow::theorem::{
    asymptotic_ratio, certification_grid, certify_grid, majorant_gap, solve_p0, TheoremConstants, Verdict,
};
use sincpow::{ExactRational, PValue};

type Outcome = Result<String, String>;

fn pv(p: f64) -> PValue {
    PValue::new(p).unwrap()
}

fn q(num: i64, den: i64) -> ExactRational {
    ExactRational::new(num, den)
}

fn order(n: u32) -> BSplineOrder {
    BSplineOrder::new(n).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!("took {:.3} s, limit {limit_s} s", elapsed.as_secs_f64())
    })
}

fn exact_table() -> Outcome {
    let start = Instant::now();
    let want = [q(1, 1), q(2, 3), q(11, 20), q(151, 315)];
    for (i, w) in want.iter().enumerate() {
        let n = i as u32 + 1;
        let got = integral_exact(n).map_err(|e| e.to_string())?;
        ensure(&got == w, || format!("I({n}) = {got}, expected {w}"))?;
    }
    within(start.elapsed(), 1.0)?;
    Ok(format!("I(1..4) = 1, 2/3, 11/20, 151/315 in {:?}", start.elapsed()))
}

fn plancherel() -> Outcome {
    let start = Instant::now();
    for n in 1..=15u32 {
        let lhs = integral_exact(n).map_err(|e| e.to_string())?;
        let rhs = bspline_value(order(2 * n), &ExactRational::zero());
        ensure(lhs == rhs, || format!("n = {n}: {lhs} != {rhs}"))?;
    }
    within(start.elapsed(), 5.0)?;
    Ok(format!("I(n) = beta_2n(0) for n = 1..15 in {:?}", start.elapsed()))
}

fn quadrature_vs_oracle() -> Outcome {
    let start = Instant::now();
    let cfg = QuadratureConfig::default();
    let mut worst = 0.0f64;
    for n in 1..=20u32 {
        let exact = integral_exact(n).map_err(|e| e.to_string())?.to_f64();
        let est = integral_numeric(pv(n as f64), &cfg).map_err(|e| e.to_string())?;
        let err = (est.value - exact).abs();
        ensure(err <= est.error_bound, || {
            format!("n = {n}: |error| {err:e} exceeds bound {:e}", est.error_bound)
        })?;
        ensure(est.error_bound <= 1e-8, || format!("n = {n}: bound {:e} > 1e-8", est.error_bound))?;
        worst = worst.max(est.error_bound);
    }
    within(start.elapsed(), 30.0)?;
    Ok(format!("n = 1..20 contained, largest bound {worst:.2e}, {:?}", start.elapsed()))
}

fn p0_reproduction() -> Outcome {
    let start = Instant::now();
    let p0 = solve_p0(1e-10).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure((1.84135..=1.84145).contains(&p0), || format!("p0 = {p0}"))?;
    within(elapsed, 0.1)?;
    Ok(format!("p0 = {p0:.10} in {elapsed:?}"))
}

fn inequality_chain() -> Outcome {
    let start = Instant::now();
    let cfg = QuadratureConfig::default();
    let consts = TheoremConstants::compute().map_err(|e| e.to_string())?;
    let grid = certification_grid();
    let certs = certify_grid(&grid, &cfg, &consts, 1.0).map_err(|e| e.to_string())?;
    for c in &certs {
        let p = c.p.get();
        ensure(c.verdict == Verdict::Pass, || format!("p = {p} fails: {c:?}"))?;
        if p == 1.0 {
            ensure(c.margin1.abs() <= 1e-8, || format!("margin at p = 1 is {:e}", c.margin1))?;
        } else {
            ensure(c.margin1 > 0.0, || format!("p = {p}: margin {:e} not positive", c.margin1))?;
        }
    }
    let tightest = certs
        .iter()
        .filter(|c| c.p.get() > 1.0)
        .map(|c| c.margin1)
        .fold(f64::INFINITY, f64::min);
    within(start.elapsed(), 60.0)?;
    Ok(format!(
        "{} points pass, smallest margin beyond p = 1 is {tightest:.3e}, {:?}",
        certs.len(),
        start.elapsed()
    ))
}

fn asymptotic_law() -> Outcome {
    let cfg = QuadratureConfig::default();
    let r = |p: f64| asymptotic_ratio(pv(p), &cfg).map_err(|e| e.to_string());
    let (r2, r4, r100) = (r(2.0)?, r(4.0)?, r(100.0)?);
    ensure((r2 - 0.9648022).abs() <= 2e-4, || format!("r(2) = {r2}"))?;
    ensure((r4 - 0.9810930).abs() <= 2e-4, || format!("r(4) = {r4}"))?;
    ensure((r100 - 1.0).abs() <= 5e-3, || format!("r(100) = {r100}"))?;
    let mut prev = r2;
    for n in 3..=50 {
        let cur = r(n as f64)?;
        ensure(cur > prev, || format!("r({n}) = {cur} <= r({}) = {prev}", n - 1))?;
        prev = cur;
    }
    Ok(format!("r(2) = {r2:.7}, r(4) = {r4:.7}, r(100) = {r100:.7}, increasing on 2..50"))
}

fn central_bound() -> Outcome {
    let radius = 6.0 / 5f64.sqrt();
    let points = 100_000;
    let mut min_gap = f64::INFINITY;
    for i in 0..=points {
        let t = radius * i as f64 / points as f64;
        min_gap = min_gap.min(majorant_gap(t).map_err(|e| e.to_string())?);
    }
    ensure(min_gap >= -1e-15, || format!("majorant gap minimum {min_gap:e}"))?;
    let cfg = QuadratureConfig::with_abs_tol(1e-12);
    let mut slack = Vec::new();
    for p in [1.0, 2.0, 5.0] {
        let (value, residual) = integrate_interval(pv(p), 0.0, radius, &cfg).map_err(|e| e.to_string())?;
        let bound = (3.0 / PI).sqrt() / p.sqrt();
        ensure(value + residual <= bound, || format!("p = {p}: central {value} > {bound}"))?;
        slack.push(bound - value);
    }
    Ok(format!(
        "gap minimum {min_gap:.1e}; central slack at p = 1, 2, 5: {:.4}, {:.4}, {:.4}",
        slack[0], slack[1], slack[2]
    ))
}

fn tail_bounds() -> Outcome {
    let radius = 6.0 / 5f64.sqrt();
    let crude = tail_bound_crude(radius, 1.0).map_err(|e| e.to_string())?;
    let closed_form = 5f64.sqrt() / (3.0 * PI);
    ensure((crude - closed_form).abs() <= 1e-6, || format!("crude(6/sqrt5, 1) = {crude}"))?;
    for p in [1.0, 1.3, 2.0, 2.7, 5.0, 20.0] {
        for k in [1u64, 3, 10, 100, 10_000] {
            let enc = tail_enclosure(k, pv(p)).map_err(|e| e.to_string())?;
            let cap = tail_bound_crude(k as f64 * PI, p).map_err(|e| e.to_string())?;
            ensure(enc.low <= enc.high, || format!("p = {p}, K = {k}: empty enclosure"))?;
            ensure(enc.high <= cap, || format!("p = {p}, K = {k}: high {} > crude {cap}", enc.high))?;
        }
    }
    for n in 1..=3u32 {
        let exact = integral_exact(n).map_err(|e| e.to_string())?.to_f64();
        for k in [10u64, 100] {
            let central = central_part(pv(n as f64), k, 1e-15, 32);
            let tail = exact - central.value;
            let slack = central.residual + 64.0 * f64::EPSILON * exact;
            let enc = tail_enclosure(k, pv(n as f64)).map_err(|e| e.to_string())?;
            ensure(enc.low - slack <= tail && tail <= enc.high + slack, || {
                format!("n = {n}, K = {k}: tail {tail:e} outside [{:e}, {:e}]", enc.low, enc.high)
            })?;
        }
    }
    Ok(format!("crude(6/sqrt5, 1) = {crude:.8}; enclosures capped and containing"))
}

fn sandwich() -> Outcome {
    let cfg = QuadratureConfig::default();
    for p in [1.25, 1.5, 2.5, 3.7] {
        let est = integral_numeric(pv(p), &cfg).map_err(|e| e.to_string())?;
        let hi = integral_exact(p.floor() as u32).map_err(|e| e.to_string())?.to_f64();
        let lo = integral_exact(p.ceil() as u32).map_err(|e| e.to_string())?.to_f64();
        ensure(est.upper() >= lo && est.lower() <= hi, || {
            format!("p = {p}: [{}, {}] misses [{lo}, {hi}]", est.lower(), est.upper())
        })?;
        ensure(lo < est.value && est.value < hi, || format!("p = {p}: {} outside ({lo}, {hi})", est.value))?;
    }
    Ok("I(ceil p) <= I(p) <= I(floor p) for p = 1.25, 1.5, 2.5, 3.7".to_string())
}

fn bspline_structure() -> Outcome {
    let grid: Vec<ExactRational> = (-40..=40).map(|i| q(i, 8)).chain((-9..=9).map(|i| q(i, 7))).collect();
    for n in 1..=8u32 {
        let b = order(n);
        let half = q(n as i64, 2);
        for x in &grid {
            let closed = bspline_value(b, x);
            ensure(closed == bspline_recursive(b, x), || format!("n = {n}, x = {x}: forms differ"))?;
            ensure(closed == bspline_value(b, &-x.clone()), || format!("n = {n}, x = {x}: asymmetric"))?;
            let ax = x.abs();
            if ax > half {
                ensure(closed.is_zero(), || format!("n = {n}, x = {x}: nonzero outside support"))?;
            } else if ax < half {
                ensure(closed.is_positive(), || format!("n = {n}, x = {x}: not positive inside"))?;
            }
        }
        let edge = bspline_value(b, &half);
        let want_edge = if n == 1 { q(1, 2) } else { ExactRational::zero() };
        ensure(edge == want_edge, || format!("n = {n}: value {edge} at n/2"))?;
        for x in [q(0, 1), q(1, 3), q(-2, 7), q(5, 11)] {
            let mut sum = ExactRational::zero();
            for k in -(n as i64 + 2)..=(n as i64 + 2) {
                sum = sum + bspline_value(b, &(x.clone() - ExactRational::from_integer(k)));
            }
            ensure(sum == ExactRational::one(), || format!("n = {n}, x = {x}: partition sums to {sum}"))?;
        }
    }
    let v = bspline_value(order(4), &q(1, 2));
    ensure(v == q(23, 48), || format!("beta_4(1/2) = {v}"))?;
    Ok("orders 1..8: forms agree, symmetric, supported, partition of unity; beta_4(1/2) = 23/48".to_string())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact oracle table", exact_table),
        ("Plancherel identity", plancherel),
        ("quadrature against oracle", quadrature_vs_oracle),
        ("crossover p0", p0_reproduction),
        ("inequality chain on grid", inequality_chain),
        ("asymptotic ratio", asymptotic_law),
        ("central Gaussian bound", central_bound),
        ("tail bounds", tail_bounds),
        ("sandwich between integers", sandwich),
        ("B-spline structure", bspline_structure),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
