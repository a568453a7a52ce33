use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. `BigRational` keeps itself in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as a big integer.
pub fn factorial_int(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!` exactly. Negative arguments are a domain error.
pub fn factorial(n: i64) -> Result<Rational> {
    if n < 0 {
        return Err(Error::Domain(format!("factorial of negative integer {n}")));
    }
    Ok(Rational::from_integer(factorial_int(n as u64)))
}

/// `1/n!`, with `1/n! = 0` for negative `n` (reciprocal Gamma vanishes at
/// the nonpositive integers).
pub fn reciprocal_factorial(n: i64) -> Rational {
    if n < 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::one(), factorial_int(n as u64))
    }
}

/// `base^exp` for a possibly negative exponent.
pub fn pow(base: &Rational, exp: i64) -> Result<Rational> {
    if exp < 0 && base.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut acc = Rational::one();
    let mut sq = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    Ok(acc)
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Nearest double to an exact rational. Operands wider than `f64` are scaled
/// by their bit lengths first, so huge numerators and denominators whose
/// ratio is moderate still convert accurately.
pub fn to_f64(q: &Rational) -> f64 {
    let num = q.numer();
    if num.is_zero() {
        return 0.0;
    }
    let den = q.denom();
    // Keep 64 significant bits in the integer quotient.
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let quotient = if shift >= 0 {
        (num.abs() << shift as usize) / den
    } else {
        num.abs() / (den << (-shift) as usize)
    };
    let mantissa = quotient.to_f64().expect("at most 66 bits");
    let value = ldexp(mantissa, -shift);
    if num.is_negative() {
        -value
    } else {
        value
    }
}

fn ldexp(mut value: f64, mut exp: i64) -> f64 {
    while exp > 1000 {
        value *= 2f64.powi(1000);
        exp -= 1000;
    }
    while exp < -1000 {
        value *= 2f64.powi(-1000);
        exp += 1000;
    }
    value * 2f64.powi(exp as i32)
}

/// Exact rational value of a finite double.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
}

/// `e^(-x)` for `x ≥ 0` to roughly `digits` correct decimal digits, as an
/// exact rational: the reciprocal of a truncated `e^x` series. Test-only; the
/// library never needs transcendental values.
#[cfg(test)]
pub(crate) fn exp_neg_series(x: &Rational, digits: u32) -> Rational {
    let cutoff = Rational::new(BigInt::one(), BigInt::from(10).pow(digits));
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let mut k = 1i64;
    while term > &sum * &cutoff {
        term = term * x / int(k);
        sum += &term;
        k += 1;
    }
    sum.recip()
}
