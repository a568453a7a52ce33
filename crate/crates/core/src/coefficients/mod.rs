//! Coefficient tables `c_{i,j}` of the largest-eigenvalue density
//! `f(x) = Σ_i e^(-i x) Σ_j c_{i,j} x^j`.
//!
//! Two independent routes produce them: the explicit formulas for `K = 2, 3`
//! in [`closed_form`] and the Hankel determinant of `L`-polynomials in
//! [`hankel`], which handles every `K`.

pub mod closed_form;
pub mod determinant;
pub mod hankel;
pub mod lpoly;
pub mod table;

use std::fmt;
use std::str::FromStr;

pub use closed_form::{closed_form_k2, closed_form_k3};
pub use hankel::{d_constant, hankel_coeffs, HankelSystem};
pub use lpoly::l_poly;
pub use table::{validate_dimensions, CoefficientTable, MAX_KN};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    /// Closed forms for `K ∈ {2, 3}`, Hankel otherwise.
    #[default]
    Auto,
    ClosedForm,
    Hankel,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "closed-form" => Ok(Engine::ClosedForm),
            "hankel" => Ok(Engine::Hankel),
            other => Err(Error::Domain(format!("unknown engine {other:?}"))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Auto => "auto",
            Engine::ClosedForm => "closed-form",
            Engine::Hankel => "hankel",
        })
    }
}

pub fn coefficients(k: u32, n: u32, engine: Engine) -> Result<CoefficientTable> {
    validate_dimensions(k, n)?;
    match (engine, k) {
        (Engine::Auto | Engine::ClosedForm, 2) => closed_form_k2(n),
        (Engine::Auto | Engine::ClosedForm, 3) => closed_form_k3(n),
        (Engine::ClosedForm, _) => Err(Error::Domain(format!(
            "no closed-form coefficients for K = {k}; use the hankel engine"
        ))),
        (Engine::Auto | Engine::Hankel, _) => hankel_coeffs(k, n),
    }
}
