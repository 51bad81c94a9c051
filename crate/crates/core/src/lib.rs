//! Rigorous evaluation of the sinc-power integral
//! `I(p) = (1/π) ∫ (sin² t / t²)^p dt`, its exact rational values at integer
//! `p` through centered cardinal B-splines, and certificates for the chain
//! `I(p) <= C(p) √(3/π)/√p <= 1/√p <= √2/√p`.

pub mod bspline;
pub mod check;
pub mod error;
pub mod gauss;
pub mod kernel;
pub mod quadrature;
pub mod rational;
pub mod theorem;

pub use bspline::{bspline_recursive, bspline_value, gaussian_center_approx, integral_exact, BSplineOrder};
pub use error::{Error, Result};
pub use kernel::PValue;
pub use quadrature::{integral_numeric, IntegralEstimate, QuadratureConfig};
pub use rational::ExactRational;
pub use theorem::{certify, Certificate, TheoremConstants, Verdict};
