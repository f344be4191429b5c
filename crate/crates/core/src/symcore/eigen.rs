//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use crate::error::{Error, Result};
use crate::symcore::matrix::{Scalar, SymMatrix};

const MAX_SWEEPS: usize = 100;
const OFF_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order; column `i` of `vectors` pairs with `values[i]`.
#[derive(Clone, Debug)]
pub struct EigenResult {
    pub values: Vec<f64>,
    /// Row-major n×n orthogonal matrix.
    pub vectors: Vec<f64>,
    pub n: usize,
}

impl EigenResult {
    pub fn vector(&self, col: usize) -> Vec<f64> {
        (0..self.n).map(|row| self.vectors[row * self.n + col]).collect()
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    /// `V diag(f(λ)) V^T`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> SymMatrix<f64> {
        let n = self.n;
        let weights: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        SymMatrix::from_fn(n, |i, j| {
            (0..n)
                .filter(|&c| weights[c] != 0.0)
                .map(|c| self.vectors[i * n + c] * weights[c] * self.vectors[j * n + c])
                .sum()
        })
    }
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

/// Eigen-decomposition by cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius norm falls below
/// `1e-12 * (1 + ||A||_F)`; more than 100 sweeps is reported as non-convergence.
pub fn eigen_sym<T: Scalar>(a: &SymMatrix<T>) -> Result<EigenResult> {
    let a = a.to_f64();
    if !a.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let (result, off) = jacobi(&a, MAX_SWEEPS);
    match off {
        None => Ok(result),
        Some(off_norm) => Err(Error::NonConvergence { sweeps: MAX_SWEEPS, off_norm }),
    }
}

/// Runs at most `max_sweeps` sweeps; the second component is the remaining
/// off-diagonal norm when the tolerance was not reached.
pub(crate) fn jacobi(a: &SymMatrix<f64>, max_sweeps: usize) -> (EigenResult, Option<f64>) {
    let n = a.n();
    let mut m = a.to_dense();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = OFF_TOL * (1.0 + a.frobenius_norm());

    let mut sweeps = 0;
    let unconverged = loop {
        let off = off_norm(&m, n);
        if off < threshold {
            break None;
        }
        if sweeps == max_sweeps {
            break Some(off);
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, n, p, q, c, s);
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x * n + x].total_cmp(&m[y * n + y]));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + new_col] = v[row * n + old_col];
        }
    }
    (EigenResult { values, vectors, n }, unconverged)
}

/// Applies `J^T M J` for the Givens rotation in the (p, q) plane.
fn rotate(m: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let mkp = m[k * n + p];
        let mkq = m[k * n + q];
        m[k * n + p] = c * mkp - s * mkq;
        m[k * n + q] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[p * n + k];
        let mqk = m[q * n + k];
        m[p * n + k] = c * mpk - s * mqk;
        m[q * n + k] = s * mpk + c * mqk;
    }
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;
}
