//! Exact arithmetic: big rationals, dense rational polynomials and the ring of
//! exponential-polynomial sums `Σ_m e^(-m x) P_m(x)`.
//!
//! Nothing in this module touches floating point except the explicit
//! conversion helpers in [`rational`].

pub mod exppoly;
pub mod polynomial;
pub mod rational;

pub use exppoly::ExpPolySum;
pub use polynomial::{poly_product_collect, FixedPointPolynomial, IntegerPolynomial, Polynomial};
pub use rational::{factorial, reciprocal_factorial, Rational};

/// `∫_0^∞ f(x) dx` for an exponential-polynomial sum without an `e^0` part.
pub fn exp_poly_integral_0_inf(f: &ExpPolySum) -> crate::Result<Rational> {
    f.integral_0_inf()
}
