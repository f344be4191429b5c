use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Scalars a [`SymMatrix`] can carry: exact rationals or doubles.
pub trait Scalar: Signed + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// True for exact arithmetic.
    const EXACT: bool;

    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as an exact rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::InvalidArgument(format!("non-finite value {x}")))
}

/// Dense real symmetric matrix storing only the upper triangle, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    upper: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Self { n, upper: vec![T::zero(); n * (n + 1) / 2] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(diag: &[T]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i].clone() } else { T::zero() })
    }

    /// Builds a matrix from `f(i, j)`, evaluated for `i <= j` only.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                upper.push(f(i, j));
            }
        }
        Self { n, upper }
    }

    /// Builds a matrix from full rows, requiring exact symmetry.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::from_rows_tol(rows, 0.0)
    }

    /// Builds a matrix from full rows. Asymmetry up to `rel_tol * (1 + max|a_ij|)` is
    /// accepted and resolved in favour of the upper triangle.
    pub fn from_rows_tol(rows: &[Vec<T>], rel_tol: f64) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix must have at least one row".into()));
        }
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        let scale = 1.0 + rows.iter().flatten().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    let gap = (rows[i][j].clone() - rows[j][i].clone()).abs().to_f64();
                    if !(gap <= rel_tol * scale) {
                        return Err(Error::Asymmetric { i, j, gap });
                    }
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j].clone()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn try_get(&self, i: usize, j: usize) -> Result<&T> {
        for index in [i, j] {
            if index >= self.n {
                return Err(Error::IndexOutOfRange { index, n: self.n });
            }
        }
        Ok(&self.upper[self.offset(i, j)])
    }

    /// Panics when `i` or `j` is out of range.
    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range for n = {}", self.n);
        &self.upper[self.offset(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range for n = {}", self.n);
        let at = self.offset(i, j);
        self.upper[at] = value;
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * (2 * self.n - i + 1) / 2 + (j - i)
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix { n: self.n, upper: self.upper.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn max_abs(&self) -> f64 {
        self.upper.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_inner(&self.to_f64(), &self.to_f64()).expect("same dimension").max(0.0).sqrt()
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        check_same_dim(self.n, other.n)?;
        Ok(Self { n: self.n, upper: self.upper.iter().zip(&other.upper).map(|(a, b)| f(a, b)).collect() })
    }

    /// Upper-triangle entries in storage order.
    pub fn packed(&self) -> &[T] {
        &self.upper
    }

    pub(crate) fn packed_mut(&mut self) -> &mut [T] {
        &mut self.upper
    }
}

impl SymMatrix<f64> {
    /// Exact rational copy of a double matrix.
    pub fn to_rational(&self) -> Result<SymMatrix<Rational>> {
        let upper = self.upper.iter().map(|&x| rational_from_f64(x)).collect::<Result<_>>()?;
        Ok(SymMatrix { n: self.n, upper })
    }

    /// Full row-major copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = *self.get(i, j);
                out[i * n + j] = v;
                out[j * n + i] = v;
            }
        }
        out
    }

    /// Symmetric part of a dense row-major square matrix.
    pub fn from_dense_symmetrized(n: usize, dense: &[f64]) -> Self {
        Self::from_fn(n, |i, j| 0.5 * (dense[i * n + j] + dense[j * n + i]))
    }

    pub fn is_finite(&self) -> bool {
        self.upper.iter().all(|x| x.is_finite())
    }
}

fn check_same_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Sorted, duplicate-free, nonempty index set into `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support(Vec<usize>);

impl Support {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidSupport("empty support".into()));
        }
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSupport(format!("duplicate index in {indices:?}")));
        }
        if let Some(&max) = indices.last() {
            if max >= n {
                return Err(Error::IndexOutOfRange { index: max, n });
            }
        }
        Ok(Self(indices))
    }

    /// Caller guarantees the indices are strictly increasing.
    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> usize {
        *self.0.last().expect("supports are nonempty")
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

/// `sum_ij a_ij b_ij`; exact for rational operands.
pub fn frobenius_inner<T: Scalar>(a: &SymMatrix<T>, b: &SymMatrix<T>) -> Result<T> {
    check_same_dim(a.n, b.n)?;
    let mut diag = T::zero();
    let mut off = T::zero();
    for i in 0..a.n {
        diag = diag + a.get(i, i).clone() * b.get(i, i).clone();
        for j in (i + 1)..a.n {
            off = off + a.get(i, j).clone() * b.get(i, j).clone();
        }
    }
    Ok(diag + off.clone() + off)
}

/// `A_K`: rows and columns of `a` restricted to `support`.
pub fn principal_submatrix<T: Scalar>(a: &SymMatrix<T>, support: &Support) -> Result<SymMatrix<T>> {
    if support.max_index() >= a.n {
        return Err(Error::IndexOutOfRange { index: support.max_index(), n: a.n });
    }
    let idx = support.indices();
    Ok(SymMatrix::from_fn(idx.len(), |p, q| a.get(idx[p], idx[q]).clone()))
}

/// `ι_K(B)`: the n×n matrix carrying `block` on `support × support`, zero elsewhere.
pub fn embed<T: Scalar>(block: &SymMatrix<T>, support: &Support, n: usize) -> Result<SymMatrix<T>> {
    check_same_dim(support.len(), block.n)?;
    if support.max_index() >= n {
        return Err(Error::IndexOutOfRange { index: support.max_index(), n });
    }
    let mut out = SymMatrix::zeros(n);
    add_embedded(&mut out, block, support);
    Ok(out)
}

/// `target += ι_K(block)`. Dimensions are the caller's responsibility.
pub(crate) fn add_embedded<T: Scalar>(target: &mut SymMatrix<T>, block: &SymMatrix<T>, support: &Support) {
    let idx = support.indices();
    for p in 0..idx.len() {
        for q in p..idx.len() {
            let (i, j) = (idx[p], idx[q]);
            let v = target.get(i, j).clone() + block.get(p, q).clone();
            target.set(i, j, v);
        }
    }
}

/// The factor `Q` of a congruence `A -> Q^T A Q`.
#[derive(Clone, Debug, PartialEq)]
pub enum Congruence<T> {
    /// `Q e_j = e_{perm[j]}`, so `(Q^T A Q)_{ij} = A_{perm[i], perm[j]}`.
    Permutation(Vec<usize>),
    Diagonal(Vec<T>),
}

impl<T: Scalar> Congruence<T> {
    /// Classifies a dense square matrix as a permutation or diagonal factor.
    pub fn from_square(q: &[Vec<T>]) -> Result<Self> {
        let n = q.len();
        if q.iter().any(|row| row.len() != n) {
            return Err(Error::BadCongruence);
        }
        let off_zero = (0..n).all(|i| (0..n).all(|j| i == j || q[i][j].is_zero()));
        if off_zero {
            return Ok(Self::Diagonal((0..n).map(|i| q[i][i].clone()).collect()));
        }
        let mut perm = vec![usize::MAX; n];
        for j in 0..n {
            let ones: Vec<usize> = (0..n).filter(|&i| !q[i][j].is_zero()).collect();
            if ones.len() != 1 || !q[ones[0]][j].is_one() {
                return Err(Error::BadCongruence);
            }
            perm[j] = ones[0];
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadCongruence);
            }
        }
        Ok(Self::Permutation(perm))
    }
}

/// `Q^T A Q` for a permutation or diagonal `Q`.
///
/// Diagonal factors must be positive unless `allow_signed_diagonal` is set, in which
/// case any nonsingular diagonal is accepted.
pub fn scale_congruence<T: Scalar>(
    a: &SymMatrix<T>,
    q: &Congruence<T>,
    allow_signed_diagonal: bool,
) -> Result<SymMatrix<T>> {
    match q {
        Congruence::Permutation(perm) => {
            check_same_dim(a.n, perm.len())?;
            let mut seen = vec![false; perm.len()];
            for &p in perm {
                if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                    return Err(Error::BadCongruence);
                }
            }
            Ok(SymMatrix::from_fn(a.n, |i, j| a.get(perm[i], perm[j]).clone()))
        }
        Congruence::Diagonal(d) => {
            check_same_dim(a.n, d.len())?;
            let ok = d.iter().all(|x| if allow_signed_diagonal { !x.is_zero() } else { x.is_positive() });
            if !ok {
                return Err(Error::BadCongruence);
            }
            Ok(SymMatrix::from_fn(a.n, |i, j| d[i].clone() * a.get(i, j).clone() * d[j].clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_layout_is_symmetric() {
        let a = SymMatrix::from_fn(4, |i, j| (10 * i + j) as f64);
        for i in 0..4 {
            for j in 0..4 {
                let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                assert_eq!(*a.get(i, j), (10 * lo + hi) as f64);
            }
        }
        assert_eq!(a.packed().len(), 10);
    }

    #[test]
    fn out_of_range_reads_are_rejected() {
        let a = SymMatrix::<f64>::identity(3);
        assert!(matches!(a.try_get(3, 0), Err(Error::IndexOutOfRange { index: 3, n: 3 })));
        assert!(a.try_get(2, 2).is_ok());
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        let rows = vec![vec![int(1), int(2)], vec![int(3), int(1)]];
        assert!(matches!(SymMatrix::from_rows(&rows), Err(Error::Asymmetric { .. })));
        let rows = vec![vec![1.0, 2.0], vec![2.0 + 1e-14, 1.0]];
        assert!(SymMatrix::from_rows_tol(&rows, 1e-12).is_ok());
        assert!(SymMatrix::from_rows(&rows).is_err());
    }

    #[test]
    fn identity_inner_product() {
        let i5 = SymMatrix::<Rational>::identity(5);
        assert_eq!(frobenius_inner(&i5, &i5).unwrap(), int(5));
    }

    #[test]
    fn submatrix_of_diagonal() {
        let a = SymMatrix::diagonal(&[1.0, 2.0, 3.0]);
        let s = Support::new(vec![0, 2], 3).unwrap();
        assert_eq!(principal_submatrix(&a, &s).unwrap(), SymMatrix::diagonal(&[1.0, 3.0]));
        let bad = Support::new(vec![0, 3], 4).unwrap();
        assert!(principal_submatrix(&a, &bad).is_err());
    }

    #[test]
    fn embed_singleton() {
        let b = SymMatrix::diagonal(&[1.0]);
        let s = Support::new(vec![2], 4).unwrap();
        assert_eq!(embed(&b, &s, 4).unwrap(), SymMatrix::diagonal(&[0.0, 0.0, 1.0, 0.0]));
        assert!(embed(&b, &s, 2).is_err());
    }

    #[test]
    fn support_validation() {
        assert!(Support::new(vec![], 3).is_err());
        assert!(Support::new(vec![1, 1], 3).is_err());
        assert!(Support::new(vec![0, 3], 3).is_err());
        assert_eq!(Support::new(vec![2, 0], 3).unwrap().indices(), &[0, 2]);
    }

    #[test]
    fn congruence_cases() {
        let a = SymMatrix::diagonal(&[1.0, 2.0]);
        let id = Congruence::from_square(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(scale_congruence(&a, &id, false).unwrap(), a);
        let swap = Congruence::from_square(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(scale_congruence(&a, &swap, false).unwrap(), SymMatrix::diagonal(&[2.0, 1.0]));
        let neg = Congruence::Diagonal(vec![1.0, -1.0]);
        assert!(matches!(scale_congruence(&a, &neg, false), Err(Error::BadCongruence)));
        assert!(scale_congruence(&a, &neg, true).is_ok());
        assert!(Congruence::from_square(&[vec![1.0, 1.0], vec![0.0, 1.0]]).is_err());
    }
}
