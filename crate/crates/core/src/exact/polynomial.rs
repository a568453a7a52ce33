use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{int, Rational};

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`. Trailing zeros are always trimmed,
/// so the zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// `(a + b x)^n` by the binomial theorem.
    pub fn linear_power(a: &Rational, b: &Rational, n: usize) -> Self {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut binom = BigInt::one();
        for k in 0..=n {
            let term = super::rational::pow(a, (n - k) as i64).expect("nonnegative exponent")
                * super::rational::pow(b, k as i64).expect("nonnegative exponent")
                * Rational::from_integer(binom.clone());
            coeffs.push(term);
            binom = binom * (n - k) / (k + 1);
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * int(k as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a / int(k as i64 + 1)),
        );
        Polynomial { coeffs }
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `∫_a^b p(x) dx`.
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// Integer numerators over the least common denominator, the form used
    /// for exact evaluation at floating-point arguments.
    pub fn to_integer_form(&self) -> IntegerPolynomial {
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        IntegerPolynomial { coeffs, denom }
    }
}

/// `Σ coeffs[k] x^k / denom` with integer numerators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPolynomial {
    pub coeffs: Vec<BigInt>,
    pub denom: BigInt,
}

impl IntegerPolynomial {
    /// Exact value at the dyadic rational `p / 2^s`.
    ///
    /// Horner runs on integers: `acc = acc * p + c_k * 2^(s (d - k))`, so the
    /// only division is the final one by `denom * 2^(s d)`.
    pub fn eval_dyadic(&self, p: &BigInt, s: usize) -> Rational {
        let Some(d) = self.coeffs.len().checked_sub(1) else {
            return Rational::zero();
        };
        let mut acc = self.coeffs[d].clone();
        for k in (0..d).rev() {
            acc = acc * p + (&self.coeffs[k] << (s * (d - k)));
        }
        Rational::new(acc, &self.denom << (s * d))
    }
}

/// Coefficients of an [`IntegerPolynomial`] rounded down to multiples of
/// `2^-prec`, for fast evaluation with a rigorous error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointPolynomial {
    coeffs: Vec<BigInt>,
    prec: usize,
}

impl IntegerPolynomial {
    pub fn to_fixed_point(&self, prec: usize) -> FixedPointPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| (c << prec).div_floor(&self.denom))
            .collect();
        FixedPointPolynomial { coeffs, prec }
    }
}

impl FixedPointPolynomial {
    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Value at `p / 2^s` for `p ≥ 0`, as `(v, err)` in units of `2^-prec`:
    /// the exact value lies in `[v - err, v + err]`.
    pub fn eval_dyadic(&self, p: &BigInt, s: usize) -> (BigInt, BigInt) {
        let Some(d) = self.coeffs.len().checked_sub(1) else {
            return (BigInt::zero(), BigInt::zero());
        };
        let mut acc = self.coeffs[d].clone();
        let mut err = BigInt::one();
        for k in (0..d).rev() {
            acc = ((acc * p) >> s) + &self.coeffs[k];
            // floor of the shift and of the coefficient each lose < 1
            err = ((err * p) >> s) + 3u32;
        }
        (acc, err)
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::constant(Rational::one())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        // Convolve integer numerators; only the result is reduced.
        let (a, b) = (self.to_integer_form(), rhs.to_integer_form());
        let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let denom = a.denom * b.denom;
        Polynomial::new(
            out.into_iter()
                .map(|c| Rational::new(c, denom.clone()))
                .collect(),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Product of all factors.
///
/// The coefficient of `x^i` in a product of two or three factors is the
/// nested convolution sum
/// `Σ_{t=max(0,i-c)}^{min(i,a+b)} Σ_{k=max(0,t-b)}^{min(t,a)} p_k q_{t-k} l_{i-t}`;
/// folding pairwise convolutions produces exactly those sums.
pub fn poly_product_collect(factors: &[Polynomial]) -> Polynomial {
    match factors.split_first() {
        None => Polynomial::one(),
        Some((head, rest)) => rest.iter().fold(head.clone(), |acc, p| &acc * p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;
    use proptest::prelude::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = Polynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_ints(&[0, 0]), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn product_examples() {
        let p = poly_product_collect(&[
            Polynomial::from_ints(&[1, 1]),
            Polynomial::from_ints(&[1, -1]),
        ]);
        assert_eq!(p, Polynomial::from_ints(&[1, 0, -1]));

        // (2 - 2x + x^2)^2 expanded by hand
        let q = Polynomial::from_ints(&[2, -2, 1]);
        assert_eq!(
            poly_product_collect(&[q.clone(), q]),
            Polynomial::from_ints(&[4, -8, 8, -4, 1])
        );

        let one_plus_x = Polynomial::from_ints(&[1, 1]);
        assert_eq!(
            poly_product_collect(&[one_plus_x.clone(), one_plus_x.clone(), one_plus_x]),
            Polynomial::from_ints(&[1, 3, 3, 1])
        );
    }

    /// The explicit three-factor convolution formula, written out as an
    /// independent check of the folded product.
    fn triple_convolution(p: &Polynomial, q: &Polynomial, l: &Polynomial) -> Polynomial {
        let (a, b, c) = (p.len() - 1, q.len() - 1, l.len() - 1);
        let mut out = Vec::new();
        for i in 0..=a + b + c {
            let mut s = Rational::zero();
            for t in i.saturating_sub(c)..=i.min(a + b) {
                for k in t.saturating_sub(b)..=t.min(a) {
                    s += p.coeff(k) * q.coeff(t - k) * l.coeff(i - t);
                }
            }
            out.push(s);
        }
        Polynomial::new(out)
    }

    #[test]
    fn calculus() {
        let p = Polynomial::from_ints(&[3, 0, 6]);
        assert_eq!(p.derivative(), Polynomial::from_ints(&[0, 12]));
        assert_eq!(p.antiderivative(), Polynomial::from_ints(&[0, 3, 0, 2]));
        assert_eq!(p.integrate(&int(0), &int(1)), int(5));
        assert_eq!(p.eval(&ratio(1, 2)), ratio(9, 2));
        assert_eq!(
            Polynomial::linear_power(&int(2), &int(-1), 3),
            Polynomial::from_ints(&[8, -12, 6, -1])
        );
    }

    #[test]
    fn integer_form_evaluation_is_exact() {
        let p = Polynomial::new(vec![ratio(1, 3), ratio(-5, 7), ratio(2, 9)]);
        let ip = p.to_integer_form();
        // x = 13/8
        let x = ratio(13, 8);
        assert_eq!(ip.eval_dyadic(&BigInt::from(13), 3), p.eval(&x));
    }

    fn poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-20i64..20, 1..6).prop_map(|c| Polynomial::from_ints(&c))
    }

    proptest! {
        #[test]
        fn product_collect_matches_pairwise(ps in prop::collection::vec(poly(), 1..5)) {
            let mut expected = Polynomial::one();
            for p in &ps {
                expected = &expected * p;
            }
            prop_assert_eq!(poly_product_collect(&ps), expected);
        }

        #[test]
        fn three_factor_identity(p in poly(), q in poly(), l in poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero() && !l.is_zero());
            prop_assert_eq!(
                poly_product_collect(&[p.clone(), q.clone(), l.clone()]),
                triple_convolution(&p, &q, &l)
            );
        }

        #[test]
        fn derivative_inverts_antiderivative(p in poly()) {
            prop_assert_eq!(p.antiderivative().derivative(), p);
        }
    }
}
