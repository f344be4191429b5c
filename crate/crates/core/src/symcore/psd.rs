use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::symcore::eigen::{eigen_sym, jacobi, EigenResult};
use crate::symcore::matrix::{Scalar, SymMatrix};

/// Default relative psd tolerance.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdReport {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    /// Absolute threshold: `tol * (1 + max|a_ij|)`, zero on the exact path.
    pub tolerance_used: f64,
}

/// Decides `x^T A x >= 0` for all `x`.
///
/// Floating path: psd iff `λ_min >= -tol * (1 + max|a_ij|)`. Exact rational input with
/// `tol == 0` is decided by pivoted symmetric elimination instead; the reported
/// eigenvalue is then clamped to the side of zero the exact test chose.
pub fn is_psd<T: Scalar>(a: &SymMatrix<T>, tol: f64) -> PsdReport {
    let lambda = min_eigenvalue(a);
    if T::EXACT && tol == 0.0 {
        let psd = exact_psd(a);
        let min_eigenvalue = if psd { lambda.max(0.0) } else { lambda.min(-f64::MIN_POSITIVE) };
        return PsdReport { is_psd: psd, min_eigenvalue, tolerance_used: 0.0 };
    }
    let tolerance_used = tol * (1.0 + a.max_abs());
    PsdReport { is_psd: lambda >= -tolerance_used, min_eigenvalue: lambda, tolerance_used }
}

/// Smallest eigenvalue. Never fails: Jacobi is allowed extra sweeps and the best
/// estimate is returned.
pub fn min_eigenvalue<T: Scalar>(a: &SymMatrix<T>) -> f64 {
    match eigen_sym(a) {
        Ok(e) => e.min_value(),
        Err(_) => jacobi(&a.to_f64(), 10 * 100).0.min_value(),
    }
}

/// Exact psd decision by symmetric elimination with diagonal pivoting.
///
/// A negative diagonal entry, or a zero diagonal entry with a nonzero entry in its row,
/// certifies "not psd"; zero rows are dropped; otherwise the largest positive diagonal
/// entry is eliminated and the test recurses on its Schur complement.
pub fn exact_psd<T: Scalar>(a: &SymMatrix<T>) -> bool {
    let mut m = a.rows();
    let mut active: Vec<usize> = (0..a.n()).collect();
    while !active.is_empty() {
        if active.iter().any(|&i| m[i][i].is_negative()) {
            return false;
        }
        let mut kept = Vec::with_capacity(active.len());
        for &i in &active {
            if m[i][i].is_zero() {
                if active.iter().any(|&j| j != i && !m[i][j].is_zero()) {
                    return false;
                }
            } else {
                kept.push(i);
            }
        }
        active = kept;
        let Some(pos) = (0..active.len()).max_by(|&x, &y| {
            let (dx, dy) = (&m[active[x]][active[x]], &m[active[y]][active[y]]);
            dx.partial_cmp(dy).unwrap_or(std::cmp::Ordering::Equal).then(y.cmp(&x))
        }) else {
            return true;
        };
        let p = active.remove(pos);
        let pivot = m[p][p].clone();
        for &i in &active {
            let factor = m[i][p].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for &j in &active {
                let v = m[i][j].clone() - factor.clone() * m[p][j].clone();
                m[i][j] = v;
            }
        }
    }
    true
}

/// Frobenius-nearest psd matrix: `V diag(max(λ, 0)) V^T`.
pub fn project_psd<T: Scalar>(a: &SymMatrix<T>) -> Result<SymMatrix<f64>> {
    let e = eigen_sym(a)?;
    Ok(clip_negative(&e))
}

pub(crate) fn clip_negative(e: &EigenResult) -> SymMatrix<f64> {
    e.reconstruct_with(|l| l.max(0.0))
}

/// Count of eigenvalues above `rel_tol * max|a_ij|`.
pub fn numerical_rank<T: Scalar>(a: &SymMatrix<T>, rel_tol: f64) -> Result<usize> {
    let e = eigen_sym(a)?;
    let cutoff = rel_tol * a.max_abs();
    Ok(e.values.iter().filter(|&&l| l.abs() > cutoff).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::matrix::{int, rat, Rational};

    #[test]
    fn diagonal_with_zero_is_psd() {
        let r = is_psd(&SymMatrix::diagonal(&[1.0, 0.0, 2.0]), DEFAULT_PSD_TOL);
        assert!(r.is_psd);
        let exact = SymMatrix::diagonal(&[int(1), int(0), int(2)]);
        assert!(is_psd(&exact, 0.0).is_psd);
    }

    #[test]
    fn indefinite_two_by_two() {
        let a = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        let r = is_psd(&a, DEFAULT_PSD_TOL);
        assert!(!r.is_psd);
        assert!((r.min_eigenvalue + 1.0).abs() < 1e-12);
        let q = a.to_rational().unwrap();
        assert!(!is_psd(&q, 0.0).is_psd);
    }

    #[test]
    fn exact_singular_boundary() {
        // rank one, psd but singular: floating test alone sits on the edge
        let v = [rat(1, 3), rat(-2, 7), int(5)];
        let a: SymMatrix<Rational> = SymMatrix::from_fn(3, |i, j| v[i].clone() * v[j].clone());
        let r = is_psd(&a, 0.0);
        assert!(r.is_psd);
        assert!(r.min_eigenvalue >= -r.tolerance_used);
        let shifted = a.sub(&SymMatrix::diagonal(&[int(0), int(0), rat(1, 1_000_000_000)])).unwrap();
        assert!(!exact_psd(&shifted));
    }

    #[test]
    fn zero_diagonal_with_coupling_is_not_psd() {
        let a = SymMatrix::from_rows(&[vec![int(0), int(1)], vec![int(1), int(5)]]).unwrap();
        assert!(!exact_psd(&a));
        assert!(exact_psd(&SymMatrix::<Rational>::zeros(3)));
    }

    #[test]
    fn projection_clips_negative_part() {
        let p = project_psd(&SymMatrix::diagonal(&[1.0, -1.0])).unwrap();
        assert!(p.sub(&SymMatrix::diagonal(&[1.0, 0.0])).unwrap().max_abs() < 1e-15);
        let psd = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!(project_psd(&psd).unwrap().sub(&psd).unwrap().max_abs() < 1e-10);
    }
}
