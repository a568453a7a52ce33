//! Division-free determinants over commutative rings.

use num_traits::{One, Zero};

use crate::exact::{ExpPolySum, Rational};

/// Commutative ring operations by reference.
pub trait Ring: Clone + Zero + One {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

macro_rules! impl_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn neg_ref(&self) -> Self {
                -self
            }
        }
    };
}

impl_ring!(Rational);
impl_ring!(ExpPolySum);

/// Largest order for which [`determinant`] uses cofactor expansion.
pub const COFACTOR_MAX_ORDER: usize = 7;

/// Determinant of a square matrix: memoized cofactor expansion up to
/// [`COFACTOR_MAX_ORDER`], Berkowitz above.
pub fn determinant<T: Ring>(m: &[Vec<T>]) -> T {
    if m.len() <= COFACTOR_MAX_ORDER {
        determinant_cofactor(m)
    } else {
        determinant_berkowitz(m)
    }
}

/// Laplace expansion along rows with minors memoized by column subset.
///
/// `minor[mask]` is the determinant of the bottom `|mask|` rows restricted to
/// the columns in `mask`, so the work is `O(2^n n)` ring products.
pub fn determinant_cofactor<T: Ring>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(n < 32, "cofactor expansion is exponential in the order");
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|mask| (mask.count_ones(), *mask));

    let mut minor: Vec<Option<T>> = vec![None; 1 << n];
    minor[0] = Some(T::one());
    for &mask in masks.iter().skip(1) {
        let size = mask.count_ones() as usize;
        let row = n - size;
        let mut acc = T::zero();
        for (pos, col) in (0..n).filter(|c| mask & (1 << c) != 0).enumerate() {
            let sub = minor[(mask & !(1 << col)) as usize]
                .as_ref()
                .expect("smaller minors are computed first");
            let term = m[row][col].mul_ref(sub);
            acc = if pos % 2 == 0 {
                acc.add_ref(&term)
            } else {
                acc.sub_ref(&term)
            };
        }
        minor[mask as usize] = Some(acc);
    }
    minor[(1usize << n) - 1].take().expect("full minor")
}

/// Berkowitz's algorithm: builds the characteristic polynomial from the
/// leading principal submatrices with `O(n^4)` ring products and no division.
pub fn determinant_berkowitz<T: Ring>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return T::one();
    }
    // Characteristic polynomial coefficients of the leading r×r block,
    // highest power first: charpoly[0] = 1.
    let mut charpoly = vec![T::one(), m[0][0].neg_ref()];
    for r in 1..n {
        let a = &m[r][r];
        let row: Vec<&T> = (0..r).map(|c| &m[r][c]).collect();
        // q = [1, -a, -R S, -R M S, ..., -R M^(r-1) S]
        let mut q = Vec::with_capacity(r + 2);
        q.push(T::one());
        q.push(a.neg_ref());
        let mut v: Vec<T> = (0..r).map(|i| m[i][r].clone()).collect();
        for k in 0..r {
            let dot = row
                .iter()
                .zip(&v)
                .fold(T::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)));
            q.push(dot.neg_ref());
            if k + 1 < r {
                v = (0..r)
                    .map(|i| (0..r).fold(T::zero(), |acc, j| acc.add_ref(&m[i][j].mul_ref(&v[j]))))
                    .collect();
            }
        }
        // Multiply by the (r+2)×(r+1) lower-triangular Toeplitz matrix of q.
        charpoly = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(T::zero(), |acc, j| {
                    acc.add_ref(&q[i - j].mul_ref(&charpoly[j]))
                })
            })
            .collect();
    }
    let det = charpoly.pop().expect("nonempty");
    if n.is_multiple_of(2) {
        det
    } else {
        det.neg_ref()
    }
}
