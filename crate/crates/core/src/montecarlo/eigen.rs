//! Eigenvalues of small Hermitian matrices by cyclic Jacobi rotations.
//!
//! A Hermitian `A = B + iC` is handled through the real symmetric embedding
//! `[[B, -C], [C, B]]`, whose spectrum is that of `A` with every eigenvalue
//! doubled.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues of a real symmetric matrix (row-major, `n × n`), unsorted.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix must be n × n");
    let mut m = a.to_vec();
    let scale = m.iter().map(|v| v * v).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let target = scale * f64::EPSILON;
    let mut off = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        off = off_diagonal_norm(&m, n);
        if off <= target {
            return Ok((0..n).map(|i| m[i * n + i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, n, p, q);
            }
        }
    }
    Err(Error::NonConvergence {
        sweeps: MAX_SWEEPS,
        residual: off,
    })
}

fn off_diagonal_norm(m: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += 2.0 * m[p * n + q] * m[p * n + q];
        }
    }
    s.sqrt()
}

/// Annihilates `m[p][q]` with a plane rotation.
fn rotate(m: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    if apq == 0.0 {
        return;
    }
    let (app, aqq) = (m[p * n + p], m[q * n + q]);
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    m[p * n + p] = app - t * apq;
    m[q * n + q] = aqq + t * apq;
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let (arp, arq) = (m[r * n + p], m[r * n + q]);
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        m[r * n + p] = new_rp;
        m[p * n + r] = new_rp;
        m[r * n + q] = new_rq;
        m[q * n + r] = new_rq;
    }
}

/// Eigenvalues of a Hermitian matrix (row-major, `n × n`), descending.
pub fn hermitian_eigenvalues(a: &[Complex64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix must be n × n");
    let m2 = 2 * n;
    let mut real = vec![0.0; m2 * m2];
    for r in 0..n {
        for c in 0..n {
            let z = a[r * n + c];
            real[r * m2 + c] = z.re;
            real[(r + n) * m2 + c + n] = z.re;
            real[r * m2 + c + n] = -z.im;
            real[(r + n) * m2 + c] = z.im;
        }
    }
    let mut doubled = symmetric_eigenvalues(&real, m2)?;
    doubled.sort_by(|x, y| y.total_cmp(x));
    Ok(doubled
        .chunks(2)
        .map(|pair| 0.5 * (pair[0] + pair[1]))
        .collect())
}
