//! Numeric evaluation of `I(p) = (1/π) ∫ (sin^2 t / t^2)^p dt` with an
//! a-posteriori error enclosure.
//!
//! The half line is cut at the zeros `kπ` of the integrand. Panels
//! `[kπ, (k+1)π]` for `k < K` are integrated with Gauss–Legendre and one
//! bisection check; the remainder `[Kπ, ∞)` is enclosed analytically by
//! bracketing `t^(-2p)` on each period and bracketing the resulting power
//! sums by integral comparison.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gauss::GaussLegendre;
use crate::kernel::{integrand, wallis, PValue};

const MAX_BISECTION_DEPTH: u32 = 12;

/// Refinement differences below this many ulps of the panel value are noise.
const ROUNDING_ULPS: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Target absolute error on `I(p)`.
    pub abs_tol: f64,
    /// Gauss–Legendre nodes per panel.
    pub panel_order: usize,
    /// Upper limit on the number of periods integrated numerically.
    pub max_panels: u64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            panel_order: 32,
            max_panels: 10_000_000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::Config("abs_tol must be a finite positive number"));
        }
        if self.panel_order < 4 {
            return Err(Error::Config("panel_order must be at least 4"));
        }
        if self.max_panels < 1 {
            return Err(Error::Config("max_panels must be at least 1"));
        }
        Ok(())
    }
}

/// Estimate of `I(p)` with its error accounting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    /// `|value - I(p)| <= error_bound`: refinement residual, half the tail
    /// enclosure width and an allowance for rounding in the sums.
    pub error_bound: f64,
    /// `(2/π) ∫_0^{Kπ}`.
    pub central_part: f64,
    /// Sum of the per-panel refinement differences, already scaled by `2/π`.
    pub residual: f64,
    pub tail_low: f64,
    pub tail_high: f64,
    /// Leaf panels evaluated, counting bisections.
    pub panels_used: u64,
    /// `Kπ`.
    pub truncation_radius: f64,
}

impl IntegralEstimate {
    pub fn lower(&self) -> f64 {
        self.value - self.error_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    /// An estimate for a value known exactly up to `error_bound`.
    pub fn exact(value: f64, error_bound: f64) -> Self {
        IntegralEstimate {
            value,
            error_bound,
            central_part: value,
            residual: 0.0,
            tail_low: 0.0,
            tail_high: 0.0,
            panels_used: 0,
            truncation_radius: f64::INFINITY,
        }
    }
}

/// Enclosure `low <= (2/π) ∫_{Kπ}^∞ (sin t / t)^(2p) dt <= high`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEnclosure {
    pub low: f64,
    pub high: f64,
}

impl TailEnclosure {
    pub fn width(&self) -> f64 {
        self.high - self.low
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.low + self.high)
    }
}

/// `(2/π) ∫_R^∞ t^(-2p) dt = (2/π) R^(1-2p) / (2p - 1)`, which bounds the
/// two-sided tail `(1/π) ∫_{|t|>=R} (sin^2 t / t^2)^p dt` from above.
pub fn tail_bound_crude(radius: f64, p: f64) -> Result<f64> {
    if !(p > 0.5) || !p.is_finite() {
        return Err(Error::domain("crude tail bound needs p > 1/2", p));
    }
    if !(radius > 0.0) {
        return Err(Error::domain("crude tail bound needs R > 0", radius));
    }
    Ok(2.0 / PI * radius.powf(1.0 - 2.0 * p) / (2.0 * p - 1.0))
}

/// Enclosure of the tail beyond `Kπ`.
///
/// Period `k` contributes between `2W((k+1)π)^(-2p)` and `2W(kπ)^(-2p)`,
/// `W` being the period mean of `sin^(2p)`. The sums over `k` are bracketed
/// by `∫_{K+1}^∞ x^(-2p) dx <= Σ_{k>K} k^(-2p)` and
/// `Σ_{k>=K} k^(-2p) <= K^(-2p) + ∫_K^∞ x^(-2p) dx`. The upper end is
/// capped by the crude bound, which is also valid.
pub fn tail_enclosure(k: u64, p: PValue) -> Result<TailEnclosure> {
    if k == 0 {
        return Err(Error::domain("tail enclosure needs K >= 1", 0.0));
    }
    let p = p.get();
    let s = 2.0 * p;
    let kf = k as f64;
    let scale = 2.0 * wallis(p)? * PI.powf(-s);
    let low = scale * (kf + 1.0).powf(1.0 - s) / (s - 1.0);
    let bracketed = scale * (kf.powf(-s) + kf.powf(1.0 - s) / (s - 1.0));
    let crude = tail_bound_crude(kf * PI, p)?;
    Ok(TailEnclosure {
        low,
        high: bracketed.min(crude),
    })
}

/// Result of integrating one interval adaptively.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct PanelSum {
    value: f64,
    residual: f64,
    leaves: u64,
}

/// Gauss–Legendre on `[a, b]`, bisected until the whole-panel and two-half
/// estimates agree within `tol`. Returns the two-half estimate and the
/// absolute difference as its error.
fn adaptive_panel<F: Fn(f64) -> f64 + Copy>(
    rule: &GaussLegendre,
    f: F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> PanelSum {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(a, mid, f);
    let right = rule.integrate(mid, b, f);
    let refined = left + right;
    let diff = (refined - whole).abs();
    let noise = ROUNDING_ULPS * f64::EPSILON * refined.abs();
    if diff <= tol.max(noise) || depth >= MAX_BISECTION_DEPTH {
        return PanelSum {
            value: refined,
            residual: diff,
            leaves: 2,
        };
    }
    let l = adaptive_panel(rule, f, a, mid, left, 0.5 * tol, depth + 1);
    let r = adaptive_panel(rule, f, mid, b, right, 0.5 * tol, depth + 1);
    PanelSum {
        value: l.value + r.value,
        residual: l.residual + r.residual,
        leaves: l.leaves + r.leaves,
    }
}

fn integrate_panel(rule: &GaussLegendre, p: PValue, a: f64, b: f64, tol: f64) -> PanelSum {
    let f = move |t: f64| integrand(t, p);
    let whole = rule.integrate(a, b, f);
    adaptive_panel(rule, f, a, b, whole, tol, 0)
}

/// Pairwise summation in a fixed order.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

/// `(2/π) ∫_0^{Kπ} (sin t / t)^(2p) dt` over `K` period panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralPart {
    pub value: f64,
    pub residual: f64,
    pub leaves: u64,
}

/// Integrates the first `k` periods. `panel_tol` is the absolute tolerance
/// per panel on the scale of `I(p)`.
pub fn central_part(p: PValue, k: u64, panel_tol: f64, panel_order: usize) -> CentralPart {
    let rule = GaussLegendre::new(panel_order);
    let raw_tol = panel_tol * PI / 2.0;
    let panels: Vec<PanelSum> = (0..k as usize)
        .into_par_iter()
        .with_min_len(512)
        .map(|j| integrate_panel(&rule, p, j as f64 * PI, (j + 1) as f64 * PI, raw_tol))
        .collect();
    let values: Vec<f64> = panels.iter().map(|s| s.value).collect();
    let residuals: Vec<f64> = panels.iter().map(|s| s.residual).collect();
    CentralPart {
        value: 2.0 / PI * pairwise_sum(&values),
        residual: 2.0 / PI * pairwise_sum(&residuals),
        leaves: panels.iter().map(|s| s.leaves).sum(),
    }
}

/// `(2/π) ∫_a^b (sin t / t)^(2p) dt` for a finite interval, with its
/// refinement residual. Used for partial integrals such as the central
/// window `[0, 6/√5]`.
pub fn integrate_interval(p: PValue, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::domain("interval must be finite with a <= b", b - a));
    }
    let rule = GaussLegendre::new(cfg.panel_order);
    let s = integrate_panel(&rule, p, a, b, cfg.abs_tol * PI / 2.0);
    Ok((2.0 / PI * s.value, 2.0 / PI * s.residual))
}

/// Smallest `K` whose tail enclosure is narrower than half of `abs_tol`.
fn choose_truncation(p: PValue, cfg: &QuadratureConfig) -> Result<u64> {
    let target = 0.5 * cfg.abs_tol;
    let narrow = |k: u64| -> Result<bool> { Ok(tail_enclosure(k, p)?.width() < target) };
    let mut hi = 1u64;
    while !narrow(hi)? {
        if hi >= 1 << 62 {
            break;
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    if lo >= 1 && !narrow(lo)? {
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if narrow(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    if hi > cfg.max_panels {
        return Err(Error::ToleranceUnreachable {
            p: p.get(),
            abs_tol: cfg.abs_tol,
            needed: hi,
            max_panels: cfg.max_panels,
        });
    }
    Ok(hi)
}

/// `I(p)` for real `p >= 1` with a rigorous (method-level) error bound.
pub fn integral_numeric(p: PValue, cfg: &QuadratureConfig) -> Result<IntegralEstimate> {
    cfg.validate()?;
    let k = choose_truncation(p, cfg)?;
    let tail = tail_enclosure(k, p)?;
    let central = central_part(p, k, 0.5 * cfg.abs_tol / k as f64, cfg.panel_order);
    // Rounding in the node sums and the pairwise reduction.
    let rounding = cfg.panel_order as f64 * f64::EPSILON * central.value.abs();
    let error_bound = central.residual + 0.5 * tail.width() + rounding;
    if error_bound > cfg.abs_tol {
        return Err(Error::NotConverged {
            p: p.get(),
            abs_tol: cfg.abs_tol,
            achieved: error_bound,
        });
    }
    Ok(IntegralEstimate {
        value: central.value + tail.midpoint(),
        error_bound,
        central_part: central.value,
        residual: central.residual,
        tail_low: tail.low,
        tail_high: tail.high,
        panels_used: central.leaves,
        truncation_radius: k as f64 * PI,
    })
}
