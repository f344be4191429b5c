use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorwidth::{enumerate_supports, Block, BlockDecomposition};
use crate::polyforms::{binomial, QuadraticForm};
use crate::symcore::{int, is_psd, min_eigenvalue, Rational, Scalar, SymMatrix};

/// `p_n^a = (Σ x_i)² + (a - 1) Σ x_i²`.
#[derive(Clone, Debug, PartialEq)]
pub struct PnaSpec {
    pub n: usize,
    pub a: Rational,
}

impl PnaSpec {
    pub fn new(n: usize, a: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        Ok(Self { n, a })
    }
}

/// Gram with `a` on the diagonal and 1 elsewhere.
pub fn pna_form(spec: &PnaSpec) -> QuadraticForm {
    QuadraticForm::new(pna_gram(spec.n, spec.a.clone()))
}

pub fn pna_gram<T: Scalar>(n: usize, a: T) -> SymMatrix<T> {
    SymMatrix::from_fn(n, |i, j| if i == j { a.clone() } else { T::one() })
}

/// `det` of the `m×m` matrix with `b` on the diagonal and `c` elsewhere:
/// `(b - c + c m)(b - c)^{m-1}`.
pub fn rank_one_perturb_det(b: &Rational, c: &Rational, m: usize) -> Result<Rational> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let d = b - c;
    let head = &d + c * int(m as i64);
    Ok(head * num_traits::pow(d, m - 1))
}

/// `(n - 1) / (k - 1)`.
pub fn pna_threshold(n: usize, k: usize) -> Result<Rational> {
    if n < 2 || k < 2 || k > n {
        return Err(Error::InvalidArgument(format!("need n >= 2 and 2 <= k <= n (got n = {n}, k = {k})")));
    }
    Ok(Rational::new((n as i64 - 1).into(), (k as i64 - 1).into()))
}

/// One block per `k`-subset: `C(n-2, k-2)^{-1}` times the matrix with
/// `(k-1) a / (n-1)` on the diagonal and 1 elsewhere. Exact.
pub fn pna_witness_decomposition(n: usize, k: usize, a: &Rational) -> Result<BlockDecomposition<Rational>> {
    let threshold = pna_threshold(n, k)?;
    if a < &threshold {
        return Err(Error::BelowThreshold(format!("a = {a} is below (n-1)/(k-1) = {threshold}")));
    }
    let weight = Rational::new(1.into(), (binomial(n - 2, k - 2) as i64).into());
    let diag = a * int(k as i64 - 1) / int(n as i64 - 1);
    let block = SymMatrix::from_fn(k, |i, j| if i == j { &diag * &weight } else { weight.clone() });
    // leading minors (b - c + l c)(b - c)^{l-1} with b = diag, c = 1 (the common weight is positive)
    for l in 1..=k {
        if rank_one_perturb_det(&diag, &Rational::one(), l)?.is_negative() {
            return Err(Error::InvalidArgument(format!("leading minor {l} of the witness block is negative")));
        }
    }
    let blocks =
        enumerate_supports(n, k)?.into_iter().map(|support| Block { support, matrix: block.clone() }).collect();
    let target = pna_gram(n, a.clone());
    let d = BlockDecomposition::new(&target, k, blocks)?;
    if d.residual() != 0.0 {
        return Err(Error::InvalidArgument(format!("witness misses the Gram by {}", d.residual())));
    }
    Ok(d)
}

/// Sum of binomial squares test through the comparison matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SobsVerdict {
    pub is_sobs: bool,
    pub min_eigenvalue: f64,
    #[serde(skip)]
    pub comparison: SymMatrix<f64>,
}

/// `Q̂` keeps the diagonal and replaces `q_ij` by `-|q_ij|`; sobs iff `Q̂ ⪰ 0`.
/// Exact input is decided exactly.
pub fn sobs_comparison<T: Scalar>(q: &SymMatrix<T>) -> SobsVerdict {
    let hat = SymMatrix::from_fn(q.n(), |i, j| if i == j { q.get(i, i).clone() } else { -q.get(i, j).abs() });
    let tol = if T::EXACT { 0.0 } else { 1e-12 };
    let report = is_psd(&hat, tol);
    SobsVerdict { is_sobs: report.is_psd, min_eigenvalue: min_eigenvalue(&hat), comparison: hat.to_f64() }
}
