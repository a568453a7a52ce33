use num_bigint::BigInt;
use num_traits::One;

use super::determinant::determinant;
use super::lpoly::l_poly;
use super::table::{validate_dimensions, CoefficientTable};
use crate::error::Result;
use crate::exact::rational::{factorial_int, Rational};
use crate::exact::ExpPolySum;

/// `(K-1)×(K-1)` Hankel matrix with entries `L_{N-K+r+s}(x)`.
///
/// Integrating the squared Vandermonde of the `K-1` smaller eigenvalues
/// against the weight `λ^(N-K) (x-λ)^2 e^(-λ)` over `[0, x]^(K-1)` gives
/// `(K-1)!` times the determinant of this matrix.
#[derive(Clone, Debug)]
pub struct HankelSystem {
    k: u32,
    n: u32,
    // L_{N-K}, ..., L_{N-K+2(K-2)}; entry (r, s) is moments[r + s]
    moments: Vec<ExpPolySum>,
}

impl HankelSystem {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        validate_dimensions(k, n)?;
        let base = (n - k) as i64;
        let moments = (0..(2 * k - 3) as i64)
            .map(|t| l_poly(base + t))
            .collect::<Result<_>>()?;
        Ok(HankelSystem { k, n, moments })
    }

    pub fn order(&self) -> usize {
        (self.k - 1) as usize
    }

    pub fn entry(&self, r: usize, s: usize) -> &ExpPolySum {
        &self.moments[r + s]
    }

    pub fn matrix(&self) -> Vec<Vec<ExpPolySum>> {
        let m = self.order();
        (0..m)
            .map(|r| (0..m).map(|s| self.entry(r, s).clone()).collect())
            .collect()
    }

    pub fn determinant(&self) -> ExpPolySum {
        determinant(&self.matrix())
    }

    /// `f(x) = D(K,N) x^(N-K) e^(-x) det[L_{N-K+r+s}(x)]`.
    pub fn density(&self) -> Result<ExpPolySum> {
        let d = d_constant(self.k, self.n)?;
        Ok(self
            .determinant()
            .shift(1, (self.n - self.k) as usize)
            .scale(&d))
    }
}

/// `D(K,N) = (Π_{i=1}^{K} (N-i)! (K-i)!)^(-1)`.
pub fn d_constant(k: u32, n: u32) -> Result<Rational> {
    validate_dimensions(k, n)?;
    let denom = (1..=k as u64).fold(BigInt::one(), |acc, i| {
        acc * factorial_int(n as u64 - i) * factorial_int(k as u64 - i)
    });
    Ok(Rational::new(BigInt::one(), denom))
}

/// Coefficient table for any `2 ≤ K ≤ N` from the Hankel determinant.
///
/// Extraction fails with a consistency error if a nonzero coefficient lands
/// outside the index range or the table does not normalize.
pub fn hankel_coeffs(k: u32, n: u32) -> Result<CoefficientTable> {
    let system = HankelSystem::new(k, n)?;
    CoefficientTable::from_exp_poly(k, n, &system.density()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, ratio};

    #[test]
    fn d_constant_values() {
        assert_eq!(d_constant(2, 2).unwrap(), int(1));
        assert_eq!(d_constant(2, 3).unwrap(), ratio(1, 2));
        assert_eq!(d_constant(3, 3).unwrap(), ratio(1, 4));
        assert!(d_constant(3, 2).is_err());
        assert!(d_constant(1, 2).is_err());
    }

    #[test]
    fn hankel_structure() {
        let h = HankelSystem::new(5, 7).unwrap();
        assert_eq!(h.order(), 4);
        for r in 0..4 {
            for s in 0..4 {
                assert_eq!(h.entry(r, s), &l_poly(2 + (r + s) as i64).unwrap());
            }
        }
    }

    #[test]
    fn k2_n2_density() {
        let t = hankel_coeffs(2, 2).unwrap();
        assert_eq!(t.get(1, 0), int(2));
        assert_eq!(t.get(1, 1), int(-2));
        assert_eq!(t.get(1, 2), int(1));
        assert_eq!(t.get(2, 0), int(-2));
    }

    #[test]
    fn k6_n6_normalizes() {
        let t = hankel_coeffs(6, 6).unwrap();
        assert_eq!(t.total_mass(), int(1));
    }
}
