//! Alternating-direction splitting for `A = Σ_K ι_K(B_K)`, `B_K ⪰ 0`.
//!
//! Each block carries a free copy `X_K` and a psd copy `Z_K`. One iteration:
//!
//! ```text
//! X   = argmin Σ ||X_K - (Z_K - U_K)||²  s.t.  Σ ι_K(X_K) = A
//! Z_K = Π_psd(X_K + U_K)
//! U_K = U_K + X_K - Z_K
//! ```
//!
//! The affine step has a closed form: the residual `A - Σ ι_K(Z_K - U_K)` is spread
//! over the blocks, entry `(i, j)` divided by the number of supports covering it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorwidth::decomposition::{Block, BlockDecomposition};
use crate::factorwidth::supports::{coverage_counts, enumerate_supports};
use crate::symcore::psd::clip_negative;
use crate::symcore::{eigen_sym, Support, SymMatrix};

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Penalty parameter. The iterates of a pure feasibility problem do not depend on
    /// it; it only scales the reported multipliers.
    pub rho: f64,
    /// Accept once `max|A - Σ ι_K(Z_K)| <= feas_tol * (1 + max|a_ij|)`.
    pub feas_tol: f64,
    pub max_iter: usize,
    /// Supports to decompose over; all `C(n, k)` when absent.
    pub support_list: Option<Vec<Support>>,
    /// Worker threads for the block projections; 1 runs inline.
    pub threads: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { rho: 1.0, feas_tol: 1e-7, max_iter: 20_000, support_list: None, threads: 1 }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0) || !(self.feas_tol > 0.0) || self.max_iter == 0 || self.threads == 0 {
            return Err(Error::InvalidArgument(format!(
                "need rho > 0, feas_tol > 0, max_iter >= 1, threads >= 1 (got {}, {}, {}, {})",
                self.rho, self.feas_tol, self.max_iter, self.threads
            )));
        }
        Ok(())
    }

    pub fn with_supports(mut self, supports: Vec<Support>) -> Self {
        self.support_list = Some(supports);
        self
    }
}

/// Why a decomposition attempt stopped without success.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecomposeFailure {
    pub iterations: usize,
    pub final_residual: f64,
    pub best_residual: f64,
    /// Residual sampled every 100 iterations.
    pub residual_history: Vec<f64>,
    /// Entries with `a_ij != 0` that no support covers, if any.
    pub uncovered: Vec<(usize, usize)>,
    /// Last multiplier step `U_K^{t+1} - U_K^t`, averaged into one ambient matrix.
    /// For an infeasible target it approaches `-B` with `B` in the dual cone.
    #[serde(skip)]
    pub displacement: Option<SymMatrix<f64>>,
}

#[derive(Debug)]
pub enum DecomposeOutcome {
    Found { decomposition: BlockDecomposition, iterations: usize },
    Failed(DecomposeFailure),
}

const HISTORY_STRIDE: usize = 100;

struct Layout {
    supports: Vec<Support>,
    /// Per support, per packed block entry: the 1/coverage weight of its ambient entry.
    inv_cover: Vec<Vec<f64>>,
}

fn layout(a: &SymMatrix<f64>, k: usize, opts: &SolverOptions) -> Result<(Layout, Vec<(usize, usize)>)> {
    let n = a.n();
    let supports = match &opts.support_list {
        Some(list) => {
            for s in list {
                if s.max_index() >= n {
                    return Err(Error::IndexOutOfRange { index: s.max_index(), n });
                }
                if s.len() > k {
                    return Err(Error::InvalidSupport(format!("support {:?} is larger than k = {k}", s.indices())));
                }
            }
            list.clone()
        }
        None => enumerate_supports(n, k)?,
    };
    let cover = coverage_counts(n, &supports);
    let mut uncovered = Vec::new();
    for i in 0..n {
        for j in i..n {
            if cover[i][j] == 0 && *a.get(i, j) != 0.0 {
                uncovered.push((i, j));
            }
        }
    }
    let inv_cover = supports
        .iter()
        .map(|s| {
            let idx = s.indices();
            let mut w = Vec::with_capacity(idx.len() * (idx.len() + 1) / 2);
            for p in 0..idx.len() {
                for q in p..idx.len() {
                    w.push(1.0 / cover[idx[p]][idx[q]] as f64);
                }
            }
            w
        })
        .collect();
    Ok((Layout { supports, inv_cover }, uncovered))
}

fn embedded_sum(n: usize, supports: &[Support], blocks: &[SymMatrix<f64>]) -> SymMatrix<f64> {
    let mut total = SymMatrix::zeros(n);
    for (s, b) in supports.iter().zip(blocks) {
        crate::symcore::matrix::add_embedded(&mut total, b, s);
    }
    total
}

fn project_all(inputs: Vec<SymMatrix<f64>>, pool: Option<&rayon::ThreadPool>) -> Result<Vec<SymMatrix<f64>>> {
    let project = |m: SymMatrix<f64>| eigen_sym(&m).map(|e| clip_negative(&e));
    match pool {
        Some(pool) => pool.install(|| inputs.into_par_iter().map(project).collect()),
        None => inputs.into_iter().map(project).collect(),
    }
}

/// Searches for psd blocks `B_K` with `Σ ι_K(B_K) = A`.
pub fn fw_decompose(a: &SymMatrix<f64>, k: usize, opts: &SolverOptions) -> Result<DecomposeOutcome> {
    opts.validate()?;
    if !a.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={n}")));
    }
    let (lay, uncovered) = layout(a, k, opts)?;
    if !uncovered.is_empty() {
        let r = uncovered.iter().map(|&(i, j)| a.get(i, j).abs()).fold(0.0, f64::max);
        return Ok(DecomposeOutcome::Failed(DecomposeFailure {
            iterations: 0,
            final_residual: r,
            best_residual: r,
            residual_history: vec![r],
            uncovered,
            displacement: None,
        }));
    }
    let pool = if opts.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    let tol = opts.feas_tol * (1.0 + a.max_abs());
    let m = lay.supports.len();
    let zero_blocks = || lay.supports.iter().map(|s| SymMatrix::zeros(s.len())).collect::<Vec<_>>();
    let mut z = zero_blocks();
    let mut u = zero_blocks();
    let mut history = Vec::new();
    let mut best = f64::INFINITY;
    let mut last = f64::INFINITY;
    let mut step = zero_blocks();

    for iter in 1..=opts.max_iter {
        // affine step on V = Z - U
        let v: Vec<SymMatrix<f64>> = (0..m).map(|b| z[b].sub(&u[b]).expect("matching block sizes")).collect();
        let residual = a.sub(&embedded_sum(n, &lay.supports, &v))?;
        let x: Vec<SymMatrix<f64>> = v
            .into_iter()
            .enumerate()
            .map(|(b, mut blk)| {
                let idx = lay.supports[b].indices();
                let mut at = 0;
                for p in 0..idx.len() {
                    for q in p..idx.len() {
                        blk.packed_mut()[at] += residual.get(idx[p], idx[q]) * lay.inv_cover[b][at];
                        at += 1;
                    }
                }
                blk
            })
            .collect();

        let shifted: Vec<SymMatrix<f64>> = (0..m).map(|b| x[b].add(&u[b]).expect("matching block sizes")).collect();
        z = project_all(shifted, pool.as_ref())?;
        for b in 0..m {
            step[b] = x[b].sub(&z[b])?;
            u[b] = u[b].add(&step[b])?;
        }

        last = embedded_sum(n, &lay.supports, &z).sub(a)?.max_abs();
        best = best.min(last);
        if iter % HISTORY_STRIDE == 0 {
            history.push(last);
        }
        if last <= tol {
            let blocks =
                lay.supports.iter().cloned().zip(z).map(|(support, matrix)| Block { support, matrix }).collect();
            let decomposition = BlockDecomposition::new(a, k, blocks)?;
            return Ok(DecomposeOutcome::Found { decomposition, iterations: iter });
        }
    }
    history.push(last);
    let mut displacement = embedded_sum(n, &lay.supports, &step);
    let cover = coverage_counts(n, &lay.supports);
    for i in 0..n {
        for j in i..n {
            if cover[i][j] > 0 {
                let v = displacement.get(i, j) / cover[i][j] as f64;
                displacement.set(i, j, v);
            }
        }
    }
    Ok(DecomposeOutcome::Failed(DecomposeFailure {
        iterations: opts.max_iter,
        final_residual: last,
        best_residual: best,
        residual_history: history,
        uncovered,
        displacement: Some(displacement),
    }))
}
