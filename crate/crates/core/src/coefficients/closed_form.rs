//! Explicit coefficient formulas for `K = 2` and `K = 3`.
//!
//! Factorials in denominators go through [`reciprocal_factorial`], so a
//! negative argument zeroes its term; a negative factorial in a numerator
//! is reported as an error because no valid index produces one.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::table::{validate_dimensions, CoefficientTable};
use crate::error::{Error, Result};
use crate::exact::rational::{factorial, int, reciprocal_factorial as rf, Rational};

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn f(n: i64) -> Result<Rational> {
    factorial(n)
}

pub fn closed_form_k2(n: u32) -> Result<CoefficientTable> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "closed form for K = 2 needs N >= 2, got {n}"
        )));
    }
    validate_dimensions(2, n)?;
    let nn = n as i64;
    let mut entries = BTreeMap::new();

    for j in (nn - 2)..=nn {
        let c = int(2)
            * sign(j - nn)
            * f(2 * nn - j - 2)?
            * rf(-nn + j + 2)
            * rf(nn - j)
            * rf(nn - 2)
            * rf(nn - 1);
        entries.insert((1, j as u32), c);
    }
    for j in (nn - 2)..=(2 * nn - 4) {
        let c = -int((2 * nn - j - 2) * (2 * nn - j - 3)) * rf(-nn + j + 2) * rf(nn - 1);
        entries.insert((2, j as u32), c);
    }
    CoefficientTable::from_entries(2, n, entries)
}

pub fn closed_form_k3(n: u32) -> Result<CoefficientTable> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "closed form for K = 3 needs N >= 3, got {n}"
        )));
    }
    validate_dimensions(3, n)?;
    let nn = n as i64;
    let mut entries = BTreeMap::new();
    let j_lo = nn - 3;

    // i = 1: j up to N + 1
    for j in j_lo..=(nn + 1) {
        let mut c = Rational::zero();
        for k in (j - nn + 1).max(0)..=(j - nn + 3).min(2) {
            c += int(2)
                * sign(j - nn + 1)
                * f(nn - k)?
                * f(2 * nn - j + k - 4)?
                * int(-nn + j - 2 * k + 4)
                * rf(2 - k)
                * rf(k)
                * rf(nn - j + k - 1)
                * rf(-nn + j - k + 3)
                * rf(nn - 3)
                * rf(nn - 2)
                * rf(nn - 1);
        }
        entries.insert((1, j as u32), c);
    }

    // i = 2: j up to 2N - 2
    for j in j_lo..=(2 * nn - 2) {
        let mut c = Rational::zero();
        for k in (j - 2 * nn + 4).max(0)..=(j - nn + 3).min(2) {
            let outer = sign(k) * rf(2 - k) * rf(k) * rf(-nn + j - k + 3);
            let first = int(2)
                * f(nn - k)?
                * f(2 * nn - j + k - 3)?
                * rf(2 * nn - j + k - 5)
                * rf(nn - 3)
                * rf(nn - 1);
            let second = f(nn - k - 1)?
                * f(2 * nn - j + k - 2)?
                * rf(2 * nn - j + k - 4)
                * rf(nn - 3)
                * rf(nn - 2);
            let third = f(nn - k + 1)?
                * f(2 * nn - j + k - 4)?
                * rf(2 * nn - j + k - 6)
                * rf(nn - 2)
                * rf(nn - 1);
            c += outer * (first - second - third);
        }
        entries.insert((2, j as u32), c);
    }

    // i = 3: j up to 3N - 9
    for j in j_lo..=(3 * nn - 9) {
        let mut c = Rational::zero();
        for k in (j - 2 * nn + 5).max(0)..=(j - nn + 3).min(nn - 1) {
            let outer = rf(k) * rf(-nn + j - k + 3) * rf(nn - 2) / int(2);
            let first =
                f(nn - k + 1)? * f(2 * nn - j + k - 4)? * rf(nn - k - 1) * rf(2 * nn - j + k - 6);
            let second = f(nn - k)?
                * f(2 * nn - j + k - 3)?
                * int(nn - 2)
                * rf(nn - k - 2)
                * rf(2 * nn - j + k - 5)
                / int(nn - 1);
            c += outer * (first - second);
        }
        entries.insert((3, j as u32), c);
    }

    CoefficientTable::from_entries(3, n, entries)
}
