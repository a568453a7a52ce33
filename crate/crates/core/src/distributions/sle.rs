use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::piecewise::{Kind, PiecewisePolynomial};
use crate::coefficients::CoefficientTable;
use crate::error::{Error, Result};
use crate::exact::rational::{factorial_int, int, ratio, reciprocal_factorial, to_f64, Rational};
use crate::exact::Polynomial;

const QUANTILE_TOLERANCE: f64 = 1e-12;
const QUANTILE_MAX_ITERATIONS: usize = 200;

/// Breakpoints `1 = K/K < K/(K-1) < ... < K/1 = K`.
fn breakpoints(k: u32) -> Vec<Rational> {
    (1..=k).rev().map(|i| ratio(k as i64, i as i64)).collect()
}

/// `(KN-1)! / K^(KN-1)`.
fn leading_constant(k: u32, n: u32) -> Rational {
    let kn = (k * n) as u64;
    Rational::new(factorial_int(kn - 1), BigInt::from(k).pow(kn as u32 - 1))
}

/// Exponent `KN - j - 2` of the gated factor; never negative for in-range `j`.
fn gate_exponent(k: u32, n: u32, j: u32) -> Result<u32> {
    (k * n)
        .checked_sub(j + 2)
        .ok_or_else(|| Error::Consistency(format!("negative exponent KN - j - 2 for j = {j}")))
}

/// `Σ_j c_{i,j} i^e / e! x^j (K/i - x)^e` with `e = KN - j - 2`, the gate-free
/// part of the `i`-th density term, as integer numerators over one
/// denominator.
///
/// Uses `i^e (K/i - x)^e = (K - i x)^e` so the powers stay integral; the
/// rational weights `c_{i,j}/e!` are brought over a common denominator and
/// everything is accumulated in big integers.
fn density_term_numerators(table: &CoefficientTable, i: u32) -> Result<(Vec<BigInt>, BigInt)> {
    let (k, n) = (table.k(), table.n());
    let row: Vec<(u32, u32, Rational)> = (table.j_min()..=table.j_max(i))
        .map(|j| {
            let e = gate_exponent(k, n, j)?;
            Ok((j, e, table.get(i, j) * reciprocal_factorial(e as i64)))
        })
        .collect::<Result<_>>()?;
    let denom = row
        .iter()
        .fold(BigInt::one(), |acc, (_, _, w)| acc.lcm(w.denom()));
    let top = (k * n - 2) as usize;
    let mut acc = vec![BigInt::zero(); top + 1];

    // Walk j downwards so (K - i x)^e grows one factor at a time.
    let mut power: Vec<BigInt> = vec![BigInt::one()];
    let mut power_exp = 0u32;
    let (kk, ii) = (BigInt::from(k), BigInt::from(i));
    for (j, e, w) in row.iter().rev() {
        while power_exp < *e {
            let mut next = vec![BigInt::zero(); power.len() + 1];
            for (d, c) in power.iter().enumerate() {
                next[d] += c * &kk;
                next[d + 1] -= c * &ii;
            }
            power = next;
            power_exp += 1;
        }
        if w.is_zero() {
            continue;
        }
        let scaled = w.numer() * (&denom / w.denom());
        for (d, c) in power.iter().enumerate() {
            acc[*j as usize + d] += &scaled * c;
        }
    }
    Ok((acc, denom))
}

fn density_term(table: &CoefficientTable, i: u32) -> Result<Polynomial> {
    let (acc, denom) = density_term_numerators(table, i)?;
    Ok(Polynomial::new(
        acc.into_iter()
            .map(|c| Rational::new(c, denom.clone()))
            .collect(),
    ))
}

/// `Σ_j i^e c_{i,j} C_{i,j}(y)` with
/// `C(y) = (K/i)^e Σ_{q=0}^{e+1} (-i/K)^q / ((j+q+1) (e-q)! q!) y^(q+j+1)`.
///
/// With `1/((e-q)! q!) = binom(e, q)/e!` the factor `i^e (K/i)^e (-i/K)^q
/// binom(e, q)` is the `y^q` coefficient of `(K - i y)^e`, so the sum is the
/// density term with every power `y^p` raised to `y^(p+1)/(p+1)`. The top
/// index `q = e + 1` drops out through `1/(-1)! = 0`.
fn cumulative_term(table: &CoefficientTable, i: u32) -> Result<Polynomial> {
    let (acc, denom) = density_term_numerators(table, i)?;
    let mut coeffs = Vec::with_capacity(acc.len() + 1);
    coeffs.push(Rational::zero());
    for (p, c) in acc.into_iter().enumerate() {
        coeffs.push(Rational::new(c, &denom * BigInt::from(p + 1)));
    }
    Ok(Polynomial::new(coeffs))
}

/// The same sum as [`cumulative_term`], term by term in rationals.
#[cfg(test)]
fn cumulative_term_literal(table: &CoefficientTable, i: u32) -> Result<Polynomial> {
    let (k, n) = (table.k(), table.n());
    let k_over_i = ratio(k as i64, i as i64);
    let minus_i_over_k = ratio(-(i as i64), k as i64);
    let top = (k * n) as usize;
    let mut acc = vec![Rational::zero(); top];
    for j in table.j_min()..=table.j_max(i) {
        let c = table.get(i, j);
        if c.is_zero() {
            continue;
        }
        let e = gate_exponent(k, n, j)? as i64;
        let outer = c
            * crate::exact::rational::pow(&int(i as i64), e)?
            * crate::exact::rational::pow(&k_over_i, e)?;
        let mut ratio_power = Rational::one();
        for q in 0..=(e + 1) {
            let weight = reciprocal_factorial(e - q) * reciprocal_factorial(q);
            if !weight.is_zero() {
                acc[(q + j as i64 + 1) as usize] +=
                    &outer * &ratio_power * weight / int(j as i64 + q + 1);
            }
            ratio_power *= &minus_i_over_k;
        }
    }
    Ok(Polynomial::new(acc))
}

/// Density of `X` on `[1, K]`.
///
/// The `i`-th term is gated by `θ(1 - i x / K)`, i.e. active for `x ≤ K/i`,
/// so on `[K/(m+1), K/m)` exactly the terms `i ≤ m` contribute.
pub fn build_sle_pdf(table: &CoefficientTable) -> Result<PiecewisePolynomial> {
    let k = table.k();
    let constant = leading_constant(k, table.n());
    let terms: Vec<Polynomial> = (1..=k)
        .map(|i| density_term(table, i))
        .collect::<Result<_>>()?;
    let mut active = Polynomial::zero();
    let mut by_active_count = Vec::with_capacity(k as usize);
    for t in &terms {
        active = &active + t;
        by_active_count.push(active.scale(&constant));
    }
    // segment s covers [K/(K-s), K/(K-s-1)) with K-1-s terms active
    let segments = (0..k - 1)
        .map(|s| by_active_count[(k - 2 - s) as usize].clone())
        .collect();
    PiecewisePolynomial::new(Kind::Density, breakpoints(k), segments)
}

/// Distribution function of `X`: each term follows `C(y) - C(1)` while
/// `y < K/i` and stays at `C(K/i) - C(1)` from `K/i` on.
///
/// At `y = K/i` the term counts once, as its frozen value.
pub fn build_sle_cdf(table: &CoefficientTable) -> Result<PiecewisePolynomial> {
    let k = table.k();
    let constant = leading_constant(k, table.n());
    let one = Rational::one();
    let mut running = Vec::with_capacity(k as usize);
    let mut frozen = Vec::with_capacity(k as usize);
    for i in 1..=k {
        let c = cumulative_term(table, i)?;
        let at_one = c.eval(&one);
        frozen.push(c.eval(&ratio(k as i64, i as i64)) - &at_one);
        running.push(&c - &Polynomial::constant(at_one));
    }
    let segments = (0..k - 1)
        .map(|s| {
            let active = (k - 1 - s) as usize;
            let mut seg = running[..active]
                .iter()
                .fold(Polynomial::zero(), |acc, p| &acc + p);
            let tail = frozen[active..]
                .iter()
                .fold(Rational::zero(), |acc, v| acc + v);
            seg = &seg + &Polynomial::constant(tail);
            seg.scale(&constant)
        })
        .collect();
    PiecewisePolynomial::new(Kind::Cumulative, breakpoints(k), segments)
}

/// Exact law of the scaled largest eigenvalue for one `(K, N)`.
#[derive(Clone, Debug)]
pub struct SleDistribution {
    table: CoefficientTable,
    pdf: PiecewisePolynomial,
    cdf: PiecewisePolynomial,
}

impl SleDistribution {
    /// Builds both curves and checks, exactly, that the distribution function
    /// runs from 0 to 1 and differentiates to the density piece by piece.
    pub fn new(table: CoefficientTable) -> Result<Self> {
        let pdf = build_sle_pdf(&table)?;
        let cdf = build_sle_cdf(&table)?;
        let k = int(table.k() as i64);
        if !cdf.eval_exact(&int(1)).is_zero() {
            return Err(Error::Consistency(
                "distribution function is nonzero at 1".into(),
            ));
        }
        let top = cdf.eval_exact(&k);
        if !top.is_one() {
            return Err(Error::Consistency(format!(
                "distribution function reaches {top} at K instead of 1"
            )));
        }
        if cdf.derivative().segments() != pdf.segments() {
            return Err(Error::Consistency(
                "distribution function does not differentiate to the density".into(),
            ));
        }
        Ok(SleDistribution { table, pdf, cdf })
    }

    pub fn k(&self) -> u32 {
        self.table.k()
    }

    pub fn n(&self) -> u32 {
        self.table.n()
    }

    pub fn table(&self) -> &CoefficientTable {
        &self.table
    }

    pub fn pdf_curve(&self) -> &PiecewisePolynomial {
        &self.pdf
    }

    pub fn cdf_curve(&self) -> &PiecewisePolynomial {
        &self.cdf
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.pdf.eval(x)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.cdf.eval(x)
    }

    /// `y` with `F(y) = p`, by bisection on `[1, K]`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
        }
        let (mut lo, mut hi) = (1.0, self.k() as f64);
        if p == 0.0 {
            return Ok(lo);
        }
        if p == 1.0 {
            return Ok(hi);
        }
        for _ in 0..QUANTILE_MAX_ITERATIONS {
            if hi - lo <= QUANTILE_TOLERANCE {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid)? < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Threshold `t` with `P(X > t) = alpha`.
    pub fn threshold_for_false_alarm(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!(
                "false-alarm rate {alpha} outside (0, 1)"
            )));
        }
        self.quantile(1.0 - alpha)
    }

    /// `E[X^m]`, exactly.
    pub fn moment(&self, m: usize) -> Rational {
        self.pdf.moment(m)
    }
}

/// `E[λ_1^(z-1)] = Σ c_{i,j} (z+j-1)! / i^(z+j)`.
pub fn lambda1_moment(table: &CoefficientTable, z: u32) -> Result<Rational> {
    if z < 1 {
        return Err(Error::Domain("moment index z must be at least 1".into()));
    }
    let mut total = Rational::zero();
    for (i, j, c) in table.nonzero() {
        let e = (z + j) as u64;
        let term = Rational::new(factorial_int(e - 1), BigInt::from(i).pow(e as u32));
        total += c * term;
    }
    Ok(total)
}

/// Smallest density value over Chebyshev points of every piece; a sampled
/// nonnegativity screen.
pub fn min_sampled_density(d: &SleDistribution, points_per_segment: usize) -> Result<f64> {
    let mut worst = f64::INFINITY;
    for w in d.pdf.breakpoints().windows(2) {
        let (a, b) = (to_f64(&w[0]), to_f64(&w[1]));
        for t in 0..points_per_segment {
            // Chebyshev points of the first kind
            let theta = std::f64::consts::PI * (2 * t + 1) as f64 / (2 * points_per_segment) as f64;
            let x = 0.5 * (a + b) + 0.5 * (b - a) * theta.cos();
            worst = worst.min(d.pdf(x)?);
        }
    }
    Ok(worst)
}
