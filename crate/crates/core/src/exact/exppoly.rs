use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::rational::{factorial_int, pow, Rational};
use crate::error::{Error, Result};

/// `Σ_m e^(-m x) P_m(x)` with `m ≥ 0` and rational polynomials `P_m`.
///
/// Zero polynomials are never stored, so structural equality is equality of
/// functions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExpPolySum {
    terms: BTreeMap<u32, Polynomial>,
}

impl ExpPolySum {
    pub fn new() -> Self {
        Self::default()
    }

    /// `e^(-m x) p(x)`.
    pub fn term(m: u32, p: Polynomial) -> Self {
        let mut out = Self::new();
        out.add_term(m, p);
        out
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self::term(0, p)
    }

    pub fn add_term(&mut self, m: u32, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(existing) => &existing + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    /// Polynomial multiplying `e^(-m x)`, zero when absent.
    pub fn get(&self, m: u32) -> Polynomial {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Polynomial)> {
        self.terms.iter().map(|(&m, p)| (m, p))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::new();
        for (m, p) in self.terms() {
            out.add_term(m, p.scale(c));
        }
        out
    }

    /// Multiply by `x^k e^(-m x)`.
    pub fn shift(&self, m: u32, k: usize) -> Self {
        ExpPolySum {
            terms: self.terms().map(|(e, p)| (e + m, p.shift(k))).collect(),
        }
    }

    /// Value at a rational point given `e^(-x)` to working precision; used
    /// for sanity evaluation where the exponential is irrational.
    pub fn eval_with(&self, x: &Rational, exp_neg_x: &Rational) -> Rational {
        self.terms()
            .map(|(m, p)| p.eval(x) * pow(exp_neg_x, m as i64).expect("nonnegative exponent"))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `∫_0^∞ f(x) dx = Σ_{m≥1} Σ_k c_{m,k} k! / m^(k+1)`.
    pub fn integral_0_inf(&self) -> Result<Rational> {
        if !self.get(0).is_zero() {
            return Err(Error::Domain(
                "exponential-polynomial sum has a non-decaying e^0 term".into(),
            ));
        }
        let mut total = Rational::zero();
        for (m, p) in self.terms() {
            let rate = Rational::from_integer(m.into());
            for (k, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let moment =
                    Rational::from_integer(factorial_int(k as u64)) / pow(&rate, k as i64 + 1)?;
                total += c * moment;
            }
        }
        Ok(total)
    }
}

impl Zero for ExpPolySum {
    fn zero() -> Self {
        Self::new()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ExpPolySum {
    fn one() -> Self {
        Self::polynomial(Polynomial::one())
    }
}

impl<'a> Add<&'a ExpPolySum> for &'a ExpPolySum {
    type Output = ExpPolySum;

    fn add(self, rhs: &ExpPolySum) -> ExpPolySum {
        let mut out = self.clone();
        for (m, p) in rhs.terms() {
            out.add_term(m, p.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ExpPolySum> for &'a ExpPolySum {
    type Output = ExpPolySum;

    fn sub(self, rhs: &ExpPolySum) -> ExpPolySum {
        let mut out = self.clone();
        for (m, p) in rhs.terms() {
            out.add_term(m, -p);
        }
        out
    }
}

impl<'a> Mul<&'a ExpPolySum> for &'a ExpPolySum {
    type Output = ExpPolySum;

    fn mul(self, rhs: &ExpPolySum) -> ExpPolySum {
        let mut out = ExpPolySum::new();
        for (a, p) in self.terms() {
            for (b, q) in rhs.terms() {
                out.add_term(a + b, p * q);
            }
        }
        out
    }
}

impl Neg for &ExpPolySum {
    type Output = ExpPolySum;

    fn neg(self) -> ExpPolySum {
        ExpPolySum {
            terms: self.terms().map(|(m, p)| (m, -p)).collect(),
        }
    }
}

impl Add for ExpPolySum {
    type Output = ExpPolySum;
    fn add(self, rhs: ExpPolySum) -> ExpPolySum {
        &self + &rhs
    }
}

impl Sub for ExpPolySum {
    type Output = ExpPolySum;
    fn sub(self, rhs: ExpPolySum) -> ExpPolySum {
        &self - &rhs
    }
}

impl Mul for ExpPolySum {
    type Output = ExpPolySum;
    fn mul(self, rhs: ExpPolySum) -> ExpPolySum {
        &self * &rhs
    }
}

impl Neg for ExpPolySum {
    type Output = ExpPolySum;
    fn neg(self) -> ExpPolySum {
        -&self
    }
}

impl fmt::Display for ExpPolySum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, p)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "e^(-{m}x)[{p}]")?;
        }
        Ok(())
    }
}
