use serde::Serialize;

use crate::dualcone::certificate::{dual_membership, CERT_PSD_TOL};
use crate::error::{Error, Result};
use crate::factorwidth::enumerate_supports;
use crate::symcore::{is_psd, numerical_rank, principal_submatrix, SymMatrix};

/// Eigenvalues above this fraction of `max|b_ij|` count toward the rank.
pub const RANK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremeReport {
    pub is_psd: bool,
    pub rank: usize,
    /// Only for non-psd input: membership in `(FW_{n-1}^n)*`.
    pub in_dual: Option<bool>,
    /// Only for non-psd input: ranks of the `(n-1)×(n-1)` principal submatrices.
    pub minor_ranks: Vec<usize>,
    /// Whether `B` spans an extreme ray of `(FW_{n-1}^n)*`.
    pub extreme: bool,
}

/// Psd matrices span extreme rays iff they have rank one. Non-psd members of the
/// dual span extreme rays iff every `(n-1)×(n-1)` principal submatrix has rank `n-2`.
pub fn check_extreme_candidate(b: &SymMatrix<f64>) -> Result<ExtremeReport> {
    let n = b.n();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let rank = numerical_rank(b, RANK_TOL)?;
    if is_psd(b, CERT_PSD_TOL).is_psd {
        return Ok(ExtremeReport { is_psd: true, rank, in_dual: None, minor_ranks: Vec::new(), extreme: rank == 1 });
    }
    let in_dual = dual_membership(b, n - 1, CERT_PSD_TOL)?.is_member;
    let minor_ranks = enumerate_supports(n, n - 1)?
        .iter()
        .map(|s| numerical_rank(&principal_submatrix(b, s)?, RANK_TOL))
        .collect::<Result<Vec<_>>>()?;
    let extreme = in_dual && minor_ranks.iter().all(|&r| r == n - 2);
    Ok(ExtremeReport { is_psd: false, rank, in_dual: Some(in_dual), minor_ranks, extreme })
}
