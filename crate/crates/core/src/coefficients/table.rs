use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{factorial_int, pow, Rational};
use crate::exact::{ExpPolySum, Polynomial};

/// Largest supported `K N`.
pub const MAX_KN: u32 = 2000;

/// Checks `2 ≤ K ≤ N` and the `K N` resource limit.
pub fn validate_dimensions(k: u32, n: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("K must be at least 2, got {k}")));
    }
    if n < k {
        return Err(Error::Domain(format!(
            "N must be at least K, got K = {k}, N = {n}"
        )));
    }
    if k.checked_mul(n).is_none_or(|kn| kn > MAX_KN) {
        return Err(Error::ResourceLimit {
            k,
            n,
            limit: MAX_KN,
        });
    }
    Ok(())
}

/// Coefficients `c_{i,j}` of the largest-eigenvalue density
/// `f(x) = Σ_{i=1}^{K} e^(-i x) Σ_{j=N-K}^{(N+K)i-2i^2} c_{i,j} x^j`.
///
/// Every index in range is stored (zeros included), and construction checks
/// `Σ c_{i,j} j!/i^(j+1) = 1` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    k: u32,
    n: u32,
    rows: Vec<Vec<Rational>>,
}

impl CoefficientTable {
    /// Builds a table from sparse entries. Missing in-range entries are zero;
    /// a nonzero entry out of range, or a failed normalization, is an error.
    pub fn from_entries(k: u32, n: u32, entries: BTreeMap<(u32, u32), Rational>) -> Result<Self> {
        let table = Self::from_entries_unchecked(k, n, entries)?;
        table.check_normalization()?;
        Ok(table)
    }

    /// Like [`from_entries`](Self::from_entries) without the normalization
    /// check. Index bounds are still enforced.
    pub(crate) fn from_entries_unchecked(
        k: u32,
        n: u32,
        entries: BTreeMap<(u32, u32), Rational>,
    ) -> Result<Self> {
        validate_dimensions(k, n)?;
        let mut rows: Vec<Vec<Rational>> = (1..=k)
            .map(|i| vec![Rational::zero(); (j_max(k, n, i) - j_min(k, n) + 1) as usize])
            .collect();
        for ((i, j), c) in entries {
            if c.is_zero() {
                continue;
            }
            if i < 1 || i > k || j < j_min(k, n) || j > j_max(k, n, i) {
                return Err(Error::Consistency(format!(
                    "nonzero coefficient c[{i},{j}] = {c} outside the index range for K = {k}, N = {n}"
                )));
            }
            rows[(i - 1) as usize][(j - j_min(k, n)) as usize] = c;
        }
        Ok(CoefficientTable { k, n, rows })
    }

    /// Collects `c_{i,j}` from `f = Σ_i e^(-i x) P_i(x)`.
    pub fn from_exp_poly(k: u32, n: u32, f: &ExpPolySum) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, p) in f.terms() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    entries.insert((i, j as u32), c.clone());
                }
            }
        }
        Self::from_entries(k, n, entries)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn j_min(&self) -> u32 {
        j_min(self.k, self.n)
    }

    /// Upper `j` bound `(N+K) i - 2 i^2` for row `i`.
    pub fn j_max(&self, i: u32) -> u32 {
        j_max(self.k, self.n, i)
    }

    /// `c_{i,j}`, zero outside the index range.
    pub fn get(&self, i: u32, j: u32) -> Rational {
        if i < 1 || i > self.k || j < self.j_min() || j > self.j_max(i) {
            return Rational::zero();
        }
        self.rows[(i - 1) as usize][(j - self.j_min()) as usize].clone()
    }

    /// All in-range `((i, j), c_{i,j})`, sorted by `(i, j)`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &Rational)> + '_ {
        let j0 = self.j_min();
        self.rows.iter().enumerate().flat_map(move |(row, cs)| {
            cs.iter()
                .enumerate()
                .map(move |(col, c)| (row as u32 + 1, j0 + col as u32, c))
        })
    }

    /// Nonzero entries only.
    pub fn nonzero(&self) -> impl Iterator<Item = (u32, u32, &Rational)> + '_ {
        self.iter().filter(|(_, _, c)| !c.is_zero())
    }

    /// `f(x)` as an exponential-polynomial sum.
    pub fn density(&self) -> ExpPolySum {
        let mut f = ExpPolySum::new();
        for (row, cs) in self.rows.iter().enumerate() {
            f.add_term(
                row as u32 + 1,
                Polynomial::new(cs.clone()).shift(self.j_min() as usize),
            );
        }
        f
    }

    /// `Σ c_{i,j} j! / i^(j+1)`, the total mass of the density.
    pub fn total_mass(&self) -> Rational {
        let mut total = Rational::zero();
        for (row, cs) in self.rows.iter().enumerate() {
            let i = Rational::from_integer(BigInt::from(row + 1));
            let j0 = self.j_min() as u64;
            let mut fact = factorial_int(j0);
            let mut ipow = pow(&i, j0 as i64 + 1).expect("positive base");
            for (col, c) in cs.iter().enumerate() {
                if col > 0 {
                    fact *= j0 + col as u64;
                    ipow *= &i;
                }
                if !c.is_zero() {
                    total += c * Rational::from_integer(fact.clone()) / &ipow;
                }
            }
        }
        total
    }

    pub fn check_normalization(&self) -> Result<()> {
        let mass = self.total_mass();
        if mass.is_one() {
            Ok(())
        } else {
            Err(Error::Consistency(format!(
                "coefficient table for K = {}, N = {} has total mass {} instead of 1",
                self.k, self.n, mass
            )))
        }
    }

    pub fn to_json(&self) -> String {
        let doc = TableDocument {
            k: self.k,
            n: self.n,
            entries: self
                .iter()
                .map(|(i, j, c)| EntryDocument {
                    i,
                    j,
                    num: c.numer().to_str_radix(10),
                    den: c.denom().to_str_radix(10),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for e in doc.entries {
            let num: BigInt = e
                .num
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator {:?}", e.num)))?;
            let den: BigInt = e
                .den
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator {:?}", e.den)))?;
            if den.is_zero() {
                return Err(Error::Parse(format!(
                    "zero denominator at ({}, {})",
                    e.i, e.j
                )));
            }
            if entries
                .insert((e.i, e.j), Rational::new(num, den))
                .is_some()
            {
                return Err(Error::Parse(format!("duplicate entry ({}, {})", e.i, e.j)));
            }
        }
        Self::from_entries(doc.k, doc.n, entries)
    }
}

fn j_min(k: u32, n: u32) -> u32 {
    n - k
}

fn j_max(k: u32, n: u32, i: u32) -> u32 {
    (n + k) * i - 2 * i * i
}

#[derive(Serialize, Deserialize)]
struct TableDocument {
    #[serde(rename = "K")]
    k: u32,
    #[serde(rename = "N")]
    n: u32,
    entries: Vec<EntryDocument>,
}

#[derive(Serialize, Deserialize)]
struct EntryDocument {
    i: u32,
    j: u32,
    num: String,
    den: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn k2n2() -> BTreeMap<(u32, u32), Rational> {
        [((1, 0), 2), ((1, 1), -2), ((1, 2), 1), ((2, 0), -2)]
            .into_iter()
            .map(|(ij, c)| (ij, int(c)))
            .collect()
    }

    #[test]
    fn index_bounds() {
        let t = CoefficientTable::from_entries(2, 2, k2n2()).unwrap();
        assert_eq!(t.j_min(), 0);
        assert_eq!((t.j_max(1), t.j_max(2)), (2, 0));
        assert_eq!(t.iter().count(), 4);
        assert_eq!(t.get(2, 5), int(0));
        // upper bound never drops below the lower one
        for k in 2..12 {
            for n in k..40 {
                for i in 1..=k {
                    assert!(j_max(k, n, i) >= j_min(k, n));
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range_and_bad_mass() {
        let mut e = k2n2();
        e.insert((2, 1), int(1));
        assert!(matches!(
            CoefficientTable::from_entries(2, 2, e),
            Err(Error::Consistency(_))
        ));
        let scaled = k2n2().into_iter().map(|(ij, c)| (ij, c * int(3))).collect();
        assert!(matches!(
            CoefficientTable::from_entries(2, 2, scaled),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn dimension_guards() {
        assert!(matches!(validate_dimensions(1, 4), Err(Error::Domain(_))));
        assert!(matches!(validate_dimensions(5, 4), Err(Error::Domain(_))));
        assert!(matches!(
            validate_dimensions(4, 501),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(validate_dimensions(4, 500).is_ok());
    }

    #[test]
    fn json_round_trip_and_schema() {
        let t = CoefficientTable::from_entries(2, 2, k2n2()).unwrap();
        let text = t.to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["K"], 2);
        assert_eq!(v["N"], 2);
        assert_eq!(v["entries"][1]["num"], "-2");
        assert_eq!(v["entries"][3]["i"], 2);
        assert_eq!(CoefficientTable::from_json(&text).unwrap(), t);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(
            CoefficientTable::from_json("{"),
            Err(Error::Parse(_))
        ));
        let bad = r#"{"K":2,"N":2,"entries":[{"i":1,"j":0,"num":"x","den":"1"}]}"#;
        assert!(matches!(
            CoefficientTable::from_json(bad),
            Err(Error::Parse(_))
        ));
        let zero_den = r#"{"K":2,"N":2,"entries":[{"i":1,"j":0,"num":"1","den":"0"}]}"#;
        assert!(matches!(
            CoefficientTable::from_json(zero_den),
            Err(Error::Parse(_))
        ));
    }
}
