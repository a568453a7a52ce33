use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::rational::{factorial_int, Rational};

/// Normalized trace `T = tr(R) / K`; `K T` is Gamma(`KN`, 1), so
/// `f_T(x) = K^(KN) / (KN-1)! x^(KN-1) e^(-K x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceDistribution {
    k: u32,
    n: u32,
}

impl TraceDistribution {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::Domain(format!(
                "need K, N >= 1, got K = {k}, N = {n}"
            )));
        }
        Ok(TraceDistribution { k, n })
    }

    fn shape(&self) -> u64 {
        self.k as u64 * self.n as u64
    }

    /// Density, evaluated in log space; zero for `x <= 0`.
    pub fn pdf(&self, x: f64) -> f64 {
        if x.is_nan() || x <= 0.0 {
            return 0.0;
        }
        let kn = self.shape() as f64;
        let k = self.k as f64;
        let ln_fact: f64 = (2..self.shape()).map(|m| (m as f64).ln()).sum();
        (kn * k.ln() - ln_fact + (kn - 1.0) * x.ln() - k * x).exp()
    }

    /// `argmax f_T = (KN - 1) / K`.
    pub fn mode(&self) -> f64 {
        (self.shape() as f64 - 1.0) / self.k as f64
    }

    /// `E[T^(z-1)] = (z + KN - 2)! / ((KN - 1)! K^(z-1))`.
    pub fn moment(&self, z: u32) -> Result<Rational> {
        trace_moment(self.k, self.n, z)
    }
}

pub fn trace_moment(k: u32, n: u32, z: u32) -> Result<Rational> {
    if z < 1 {
        return Err(Error::Domain("moment index z must be at least 1".into()));
    }
    let kn = k as u64 * n as u64;
    let num = factorial_int(z as u64 + kn - 2);
    let den = factorial_int(kn - 1) * BigInt::from(k).pow(z - 1);
    Ok(Rational::new(num, den))
}

pub fn trace_pdf_eval(k: u32, n: u32, x: f64) -> Result<f64> {
    Ok(TraceDistribution::new(k, n)?.pdf(x))
}
