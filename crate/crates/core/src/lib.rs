//! Exact distribution of the scaled largest eigenvalue `X = λ_1 / (tr R / K)`
//! of a complex Wishart matrix `R = X X†` with `K ≤ N`.
//!
//! The density and distribution function of `X` are piecewise polynomials
//! on `[1, K]` with breakpoints at `K/i`. They are assembled in exact
//! rational arithmetic from the coefficients of the largest-eigenvalue
//! density and only converted to floating point at evaluation time.
//!
//! ```
//! use sle::{coefficients, Engine, SleDistribution};
//!
//! let table = coefficients(2, 2, Engine::Auto).unwrap();
//! let dist = SleDistribution::new(table).unwrap();
//! assert!((dist.pdf(1.5).unwrap() - 0.75).abs() < 1e-15);
//! ```

pub mod coefficients;
pub mod distributions;
mod error;
pub mod exact;
pub mod montecarlo;

pub use coefficients::{coefficients, CoefficientTable, Engine};
pub use distributions::{PiecewisePolynomial, SleDistribution, TraceDistribution};
pub use error::{Error, Result};
pub use exact::Rational;
pub use montecarlo::{EmpiricalSample, SimulationConfig};
