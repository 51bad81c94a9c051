//! Centered cardinal B-splines in exact arithmetic, and the exact value of
//! the sinc-power integral at integer exponents.
//!
//! The order-`n` spline is the `n`-fold convolution of the indicator of
//! `[-1/2, 1/2]`. Its Fourier transform is `(sin πt / πt)^n`, so Plancherel
//! turns `(1/π) ∫ (sin t / t)^(2n) dt` into `∫ β_n(s)^2 ds = β_{2n}(0)`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Order of a centered cardinal B-spline: degree `n - 1`, support `[-n/2, n/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BSplineOrder(u32);

impl BSplineOrder {
    pub fn new(n: u32) -> Result<Self> {
        if n >= 1 {
            Ok(BSplineOrder(n))
        } else {
            Err(Error::domain("B-spline order must be >= 1", n as f64))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    fn half_width(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(2))
    }
}

fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Row `n` of Pascal's triangle.
fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 1..=n {
        c = c * (n - k + 1) / k;
        row.push(c.clone());
    }
    row
}

/// Value of the box at order 1, with `1/2` at the jump points.
fn box_value(x: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let ax = x.abs();
    if ax < half {
        BigRational::one()
    } else if ax == half {
        half
    } else {
        BigRational::zero()
    }
}

/// `β_n(x)` from the truncated-power closed form
/// `(1/(n-1)!) Σ_{k=0}^{n} (-1)^k C(n,k) (x + n/2 - k)_+^{n-1}`.
pub fn bspline_value(n: BSplineOrder, x: &ExactRational) -> ExactRational {
    let x = x.as_ratio();
    if n.get() == 1 {
        return box_value(x).into();
    }
    let half_width = n.half_width();
    if x.abs() >= half_width {
        return ExactRational::zero();
    }
    let degree = n.get() - 1;
    let shifted = x + &half_width;
    let mut sum = BigRational::zero();
    for (k, c) in binomial_row(n.get()).into_iter().enumerate() {
        let arg = &shifted - BigRational::from_integer(BigInt::from(k));
        if !arg.is_positive() {
            break;
        }
        let term = num_traits::pow(arg, degree as usize) * BigRational::from_integer(c);
        if k.is_even() {
            sum += term;
        } else {
            sum -= term;
        }
    }
    (sum / BigRational::from_integer(factorial(degree))).into()
}

/// Dense polynomial with exact coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn constant(c: BigRational) -> Self {
        Poly(vec![c])
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Antiderivative vanishing at 0.
    fn integral(&self) -> Poly {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(BigRational::zero());
        for (k, c) in self.0.iter().enumerate() {
            out.push(c / BigRational::from_integer(BigInt::from(k + 1)));
        }
        Poly(out)
    }

    /// `q(x) = p(x + h)`.
    fn shift(&self, h: &BigRational) -> Poly {
        // Horner in polynomial arithmetic: q = (...(a_d (x+h) + a_{d-1})(x+h) + ...).
        let mut acc: Vec<BigRational> = Vec::with_capacity(self.0.len());
        for c in self.0.iter().rev() {
            let mut next = vec![BigRational::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i + 1] += a;
                next[i] += a * h;
            }
            next[0] += c;
            acc = next;
        }
        Poly(acc)
    }

    fn add_constant(mut self, c: &BigRational) -> Poly {
        self.0[0] += c;
        self
    }

    fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        Poly(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

/// An order-`n` B-spline stored as one exact polynomial per knot interval
/// `[j - n/2, j + 1 - n/2]`, `j = 0..n`, built by repeated convolution
/// with the centered unit box.
#[derive(Debug, Clone)]
pub struct PiecewiseBSpline {
    order: BSplineOrder,
    pieces: Vec<Poly>,
}

impl PiecewiseBSpline {
    pub fn new(order: BSplineOrder) -> Self {
        let mut spline = PiecewiseBSpline {
            order: BSplineOrder(1),
            pieces: vec![Poly::constant(BigRational::one())],
        };
        while spline.order < order {
            spline = spline.convolve_with_box();
        }
        spline
    }

    pub fn order(&self) -> BSplineOrder {
        self.order
    }

    fn left_knot(&self, j: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(j)) - self.order.half_width()
    }

    /// `β_{m+1}(x) = ∫_{x-1/2}^{x+1/2} β_m(s) ds = F(x + 1/2) - F(x - 1/2)`,
    /// where `F` is the cumulative integral of `β_m`.
    fn convolve_with_box(&self) -> PiecewiseBSpline {
        let m = self.pieces.len();
        // Cumulative antiderivative on each piece, continuous across knots.
        let mut cumulative = Vec::with_capacity(m);
        let mut mass = BigRational::zero();
        for (j, piece) in self.pieces.iter().enumerate() {
            let anti = piece.integral();
            let left = self.left_knot(j);
            let right = self.left_knot(j + 1);
            let offset = &mass - anti.eval(&left);
            let f = anti.add_constant(&offset);
            mass = f.eval(&right);
            cumulative.push(f);
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let neg_half = -half.clone();
        let total = Poly::constant(mass);
        let nothing = Poly::constant(BigRational::zero());
        let pieces = (0..=m)
            .map(|j| {
                let upper = cumulative.get(j).unwrap_or(&total).shift(&half);
                let lower = match j {
                    0 => nothing.clone(),
                    _ => cumulative[j - 1].shift(&neg_half),
                };
                upper.sub(&lower)
            })
            .collect();
        PiecewiseBSpline {
            order: BSplineOrder(self.order.0 + 1),
            pieces,
        }
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        let x = x.as_ratio();
        if self.order.get() == 1 {
            return box_value(x).into();
        }
        let half_width = self.order.half_width();
        if x.abs() >= half_width {
            return ExactRational::zero();
        }
        let j = (x + &half_width)
            .floor()
            .to_integer()
            .to_usize()
            .expect("index inside the support");
        self.pieces[j].eval(x).into()
    }
}

/// `β_n(x)` computed through the convolution recursion.
pub fn bspline_recursive(n: BSplineOrder, x: &ExactRational) -> ExactRational {
    PiecewiseBSpline::new(n).eval(x)
}

/// Exact `(1/π) ∫ (sin t / t)^(2n) dt = β_{2n}(0)`
/// `= (1/(2n-1)!) Σ_{k=0}^{n-1} (-1)^k C(2n,k) (n-k)^{2n-1}`.
pub fn integral_exact(n: u32) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::domain("integer exponent must be >= 1", 0.0));
    }
    let m = 2 * n;
    let mut sum = BigInt::zero();
    for (k, c) in binomial_row(m).into_iter().take(n as usize).enumerate() {
        let term = c * num_traits::pow(BigInt::from(n as usize - k), (m - 1) as usize);
        if k.is_even() {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(ExactRational::new(sum, factorial(m - 1)))
}

/// Gaussian prediction `√(6 / (π N))` for the center value `β_N(0)`.
pub fn gaussian_center_approx(n: BSplineOrder) -> f64 {
    (6.0 / (PI * n.get() as f64)).sqrt()
}
