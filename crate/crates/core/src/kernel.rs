//! Integrand and elementary special functions.
//!
//! Everything here works in double precision. The integrand
//! `(sin t / t)^(2p)` is evaluated through `ln|sin t / t|` so that large
//! exponents never overflow or lose the small-`t` digits to cancellation.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent of the sinc-power integral, `p >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PValue(f64);

impl PValue {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(PValue(p))
        } else {
            Err(Error::domain("p must be a finite real >= 1", p))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `Some(n)` when `p` is an integer.
    pub fn as_integer(self) -> Option<u32> {
        if self.0.fract() == 0.0 && self.0 <= u32::MAX as f64 {
            Some(self.0 as u32)
        } else {
            None
        }
    }
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Result of [`log_sinc`]: either a finite logarithm or the marker for a
/// zero of `sin t` away from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogSinc {
    Finite(f64),
    Zero,
}

impl LogSinc {
    /// The logarithm, with `Zero` mapped to negative infinity.
    pub fn value(self) -> f64 {
        match self {
            LogSinc::Finite(v) => v,
            LogSinc::Zero => f64::NEG_INFINITY,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, LogSinc::Zero)
    }
}

/// Below this `|t|` the power series is used.
pub const LOG_SINC_SERIES_CUTOFF: f64 = 0.5;

// Coefficients of u^k, u = t^2, in ln(sin t / t) for k = 1..=12.
// The first omitted term is below 2e-22 at |t| = 0.5.
const LOG_SINC_COEFFS: [f64; 12] = [
    -1.0 / 6.0,
    -1.0 / 180.0,
    -1.0 / 2835.0,
    -1.0 / 37800.0,
    -1.0 / 467775.0,
    -691.0 / 3831077250.0,
    -2.0 / 127702575.0,
    -3617.0 / 2605132530000.0,
    -43867.0 / 350813659321125.0,
    -174611.0 / 15313294652906250.0,
    -155366.0 / 147926426347074375.0,
    -236364091.0 / 2423034863565078262500.0,
];

/// Series for `ln(sin t / t) + t^2/6`, i.e. starting at the `t^4` term.
fn log_sinc_series_from_quartic(u: f64) -> f64 {
    let mut acc = 0.0;
    for c in LOG_SINC_COEFFS[1..].iter().rev() {
        acc = acc * u + c;
    }
    acc * u * u
}

/// `ln|sin t / t|`.
///
/// Points where `|sin t| <= EPSILON * |t|` (zeros of `sin` at the
/// resolution of `t`, e.g. `t = PI`) yield [`LogSinc::Zero`].
pub fn log_sinc(t: f64) -> LogSinc {
    let a = t.abs();
    if a < LOG_SINC_SERIES_CUTOFF {
        let u = a * a;
        return LogSinc::Finite(LOG_SINC_COEFFS[0] * u + log_sinc_series_from_quartic(u));
    }
    let s = a.sin();
    if s.abs() <= f64::EPSILON * a {
        LogSinc::Zero
    } else {
        LogSinc::Finite((s / a).abs().ln())
    }
}

/// `ln|sin t / t| + t^2/6`, accurate near the origin where the two terms
/// nearly cancel. Non-positive for `|t| < PI`.
pub fn log_sinc_remainder(t: f64) -> f64 {
    let a = t.abs();
    if a < LOG_SINC_SERIES_CUTOFF {
        log_sinc_series_from_quartic(a * a)
    } else {
        log_sinc(a).value() + a * a / 6.0
    }
}

/// `(sin^2 t / t^2)^p`.
#[inline]
pub fn integrand(t: f64, p: PValue) -> f64 {
    match log_sinc(t) {
        LogSinc::Finite(l) => (2.0 * p.get() * l).exp(),
        LogSinc::Zero => 0.0,
    }
}

// B_{2k} / (2k (2k - 1)) for k = 1..=8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Arguments at or above this use the Stirling series directly.
const STIRLING_MIN: f64 = 10.0;

/// Stirling correction `ln Γ(x) - [(x - 1/2) ln x - x + ln(2π)/2]`, for `x >= 10`.
fn stirling_correction(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    let mut acc = 0.0;
    for c in STIRLING_COEFFS.iter().rev() {
        acc = acc * r2 + c;
    }
    acc * r
}

/// `ln Γ(x)` for `x > 0`.
///
/// Stirling series with eight Bernoulli terms, after shifting the argument
/// to `x >= 10` with the recurrence `Γ(x + 1) = x Γ(x)`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("log_gamma needs a finite x > 0", x));
    }
    let mut z = x;
    let mut prod = 1.0;
    while z < STIRLING_MIN {
        prod *= z;
        z += 1.0;
    }
    let ln_sqrt_2pi = 0.5 * (2.0 * PI).ln();
    let lg = (z - 0.5) * z.ln() - z + ln_sqrt_2pi + stirling_correction(z);
    Ok(lg - prod.ln())
}

/// Mean of `sin^(2p)` over a period, `Γ(p + 1/2) / (√π Γ(p + 1))`.
///
/// The log-gamma difference is expanded so that no large logarithms are
/// subtracted; small `p` are lifted with `W(q) = W(q + 1) (2q + 2) / (2q + 1)`.
pub fn wallis(p: f64) -> Result<f64> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::domain("wallis needs a finite p >= 0", p));
    }
    let mut q = p;
    let mut lift = 1.0;
    while q < STIRLING_MIN {
        lift *= (2.0 * q + 2.0) / (2.0 * q + 1.0);
        q += 1.0;
    }
    let a = q + 0.5;
    let b = q + 1.0;
    let ln_w = q * (-0.5 / b).ln_1p() - 0.5 * b.ln() + 0.5 + stirling_correction(a)
        - stirling_correction(b)
        - 0.5 * PI.ln();
    Ok(lift * ln_w.exp())
}
