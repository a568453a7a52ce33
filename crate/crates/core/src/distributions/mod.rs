//! The scaled largest eigenvalue law as exact piecewise polynomials on
//! `[1, K]`, its moments, the normalized-trace law, and CSV export.
//!
//! Under independence of `X` and `T`, `λ_1 = X T` gives the moment product
//! `E[λ_1^(z-1)] = E[X^(z-1)] E[T^(z-1)]`, checked exactly by
//! [`mellin_identity_holds`].

pub mod piecewise;
pub mod sle;
pub mod trace;

use std::io::Write;

pub use piecewise::{Kind, PiecewisePolynomial};
pub use sle::{build_sle_cdf, build_sle_pdf, lambda1_moment, min_sampled_density, SleDistribution};
pub use trace::{trace_moment, trace_pdf_eval, TraceDistribution};

use crate::error::Result;
use crate::exact::rational::to_f64;
use crate::exact::Rational;

pub fn quantile(d: &SleDistribution, p: f64) -> Result<f64> {
    d.quantile(p)
}

pub fn threshold_for_false_alarm(d: &SleDistribution, alpha: f64) -> Result<f64> {
    d.threshold_for_false_alarm(alpha)
}

pub fn sle_moment(d: &SleDistribution, m: usize) -> Rational {
    d.moment(m)
}

/// Both sides of `E[λ_1^(z-1)] = E[X^(z-1)] E[T^(z-1)]`.
pub fn mellin_sides(d: &SleDistribution, z: u32) -> Result<(Rational, Rational)> {
    let lhs = lambda1_moment(d.table(), z)?;
    let rhs = d.moment(z as usize - 1) * trace_moment(d.k(), d.n(), z)?;
    Ok((lhs, rhs))
}

pub fn mellin_identity_holds(d: &SleDistribution, z: u32) -> Result<bool> {
    let (lhs, rhs) = mellin_sides(d, z)?;
    Ok(lhs == rhs)
}

/// `points` uniform abscissae on `[1, K]` merged with the breakpoints `K/i`.
pub fn grid(k: u32, points: usize) -> Vec<f64> {
    let (lo, hi) = (1.0, k as f64);
    let mut xs: Vec<f64> = match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|t| {
                if t + 1 == points {
                    hi
                } else {
                    lo + (hi - lo) * t as f64 / (points - 1) as f64
                }
            })
            .collect(),
    };
    xs.extend((1..=k).map(|i| to_f64(&Rational::new(k.into(), i.into()))));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// CSV with header `x,pdf,cdf`; numbers in shortest round-trip form.
pub fn write_csv<W: Write>(d: &SleDistribution, xs: &[f64], mut out: W) -> Result<()> {
    writeln!(out, "x,pdf,cdf")?;
    for &x in xs {
        writeln!(out, "{:?},{:?},{:?}", x, d.pdf(x)?, d.cdf(x)?)?;
    }
    Ok(())
}
