use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::rational::{factorial_int, Rational};
use crate::exact::{ExpPolySum, Polynomial};

/// `L_a(x) = ∫_0^x λ^a (x-λ)^2 e^(-λ) dλ` in closed form:
///
/// `Σ_{k=0}^{2} 2(a-k+2)! / ((-1)^k k! (2-k)!) x^k
///   - e^(-x) a! Σ_{k=0}^{a} (a-k+2)! / (k! (a-k)!) x^k`.
///
/// All coefficients are integers.
pub fn l_poly(a: i64) -> Result<ExpPolySum> {
    if a < 0 {
        return Err(Error::Domain(format!("L_a needs a >= 0, got {a}")));
    }
    let a = a as u64;
    // 2/(k!(2-k)!) = binom(2, k)
    let steady: Vec<Rational> = [1i64, -2, 1]
        .iter()
        .enumerate()
        .map(|(k, &signed_binom)| {
            Rational::from_integer(factorial_int(a + 2 - k as u64) * signed_binom)
        })
        .collect();

    let mut decaying = Vec::with_capacity(a as usize + 1);
    let mut binom = BigInt::from(1);
    for k in 0..=a {
        // a! (a-k+2)!/(k!(a-k)!) = binom(a, k) (a-k+2)!
        let c = -(&binom * factorial_int(a - k + 2));
        decaying.push(Rational::from_integer(c));
        binom = binom * (a - k) / (k + 1);
    }

    let mut out = ExpPolySum::polynomial(Polynomial::new(steady));
    out.add_term(1, Polynomial::new(decaying));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, to_f64};

    #[test]
    fn low_orders_match_direct_integration() {
        // ∫_0^x (x-λ)^2 e^(-λ) dλ = x^2 - 2x + 2 - 2e^(-x)
        let mut l0 = ExpPolySum::polynomial(Polynomial::from_ints(&[2, -2, 1]));
        l0.add_term(1, Polynomial::from_ints(&[-2]));
        assert_eq!(l_poly(0).unwrap(), l0);

        let mut l1 = ExpPolySum::polynomial(Polynomial::from_ints(&[6, -4, 1]));
        l1.add_term(1, Polynomial::from_ints(&[-6, -2]));
        assert_eq!(l_poly(1).unwrap(), l1);
    }

    #[test]
    fn vanishes_at_origin() {
        for a in 0..25 {
            assert_eq!(l_poly(a).unwrap().eval_with(&int(0), &int(1)), int(0));
        }
    }

    #[test]
    fn negative_order_is_rejected() {
        assert!(l_poly(-1).is_err());
    }

    /// Composite Gauss-Legendre quadrature of the defining integral.
    fn quadrature(a: i32, x: f64) -> f64 {
        let nodes = [
            (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
            (-0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.0, 0.568_888_888_888_888_9),
            (0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        ];
        let panels = 400;
        let h = x / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * h;
            for (t, w) in nodes {
                let lam = mid + 0.5 * h * t;
                total += 0.5 * h * w * lam.powi(a) * (x - lam).powi(2) * (-lam).exp();
            }
        }
        total
    }

    #[test]
    fn matches_quadrature() {
        for a in [0, 1, 2, 5, 9] {
            let l = l_poly(a as i64).unwrap();
            for x in [0.5f64, 1.0, 3.0, 7.5] {
                let xr = crate::exact::rational::from_f64(x).unwrap();
                let e = crate::exact::rational::exp_neg_series(&xr, 60);
                let exact = to_f64(&l.eval_with(&xr, &e));
                let numeric = quadrature(a, x);
                assert!(
                    (exact - numeric).abs() <= 1e-9 * numeric.abs().max(1e-3),
                    "a={a} x={x}: {exact} vs {numeric}"
                );
            }
        }
    }
}
