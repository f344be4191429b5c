use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::symcore::io::{matrix_to_json, ToJsonValue};
use crate::symcore::matrix::add_embedded;
use crate::symcore::{eigen_sym, is_psd, Scalar, Support, SymMatrix};

/// Relative psd tolerance each floating block must meet.
pub const BLOCK_PSD_TOL: f64 = 1e-8;

/// Eigenvalues below this fraction of a block's largest entry are dropped as factors.
const FACTOR_DROP_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Block<T> {
    pub support: Support,
    pub matrix: SymMatrix<T>,
}

/// `A ≈ Σ ι_K(B_K)` with psd blocks on supports of size at most `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition<T = f64> {
    ambient_n: usize,
    k: usize,
    blocks: Vec<Block<T>>,
    residual: f64,
}

impl<T: Scalar> BlockDecomposition<T> {
    /// Validates the blocks and recomputes `max|A - Σ ι_K(B_K)|` against `target`.
    ///
    /// Floating blocks must be psd at relative tolerance 1e-8; exact blocks exactly.
    pub fn new(target: &SymMatrix<T>, k: usize, blocks: Vec<Block<T>>) -> Result<Self> {
        let n = target.n();
        for b in &blocks {
            if b.support.len() > k {
                return Err(Error::InvalidSupport(format!("support of size {} exceeds k = {k}", b.support.len())));
            }
            if b.support.max_index() >= n {
                return Err(Error::IndexOutOfRange { index: b.support.max_index(), n });
            }
            if b.matrix.n() != b.support.len() {
                return Err(Error::DimensionMismatch { expected: b.support.len(), got: b.matrix.n() });
            }
            let tol = if T::EXACT { 0.0 } else { BLOCK_PSD_TOL };
            let report = is_psd(&b.matrix, tol);
            if !report.is_psd {
                return Err(Error::InvalidArgument(format!(
                    "block on {:?} is not psd (λ_min = {:e})",
                    b.support.indices(),
                    report.min_eigenvalue
                )));
            }
        }
        let mut d = Self { ambient_n: n, k, blocks, residual: 0.0 };
        d.residual = d.sum().sub(target)?.max_abs();
        Ok(d)
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Block<T>] {
        &self.blocks
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `Σ ι_K(B_K)`.
    pub fn sum(&self) -> SymMatrix<T> {
        let mut total = SymMatrix::zeros(self.ambient_n);
        for b in &self.blocks {
            add_embedded(&mut total, &b.matrix, &b.support);
        }
        total
    }

    pub fn to_f64(&self) -> BlockDecomposition<f64> {
        BlockDecomposition {
            ambient_n: self.ambient_n,
            k: self.k,
            blocks: self
                .blocks
                .iter()
                .map(|b| Block { support: b.support.clone(), matrix: b.matrix.to_f64() })
                .collect(),
            residual: self.residual,
        }
    }
}

/// Rectangular factor `V` with `A ≈ V V^T`, stored by columns.
#[derive(Clone, Debug)]
pub struct FactorMatrix {
    pub n: usize,
    pub columns: Vec<Vec<f64>>,
}

impl FactorMatrix {
    pub fn gram(&self) -> SymMatrix<f64> {
        SymMatrix::from_fn(self.n, |i, j| self.columns.iter().map(|c| c[i] * c[j]).sum())
    }

    pub fn max_column_support(&self) -> usize {
        self.columns.iter().map(|c| c.iter().filter(|x| **x != 0.0).count()).max().unwrap_or(0)
    }
}

/// Splits every block into rank-one terms `√λ · ι_K(v)`.
pub fn extract_factors<T: Scalar>(d: &BlockDecomposition<T>) -> Result<FactorMatrix> {
    let mut columns = Vec::new();
    for b in &d.blocks {
        let e = eigen_sym(&b.matrix)?;
        let cutoff = FACTOR_DROP_TOL * b.matrix.max_abs();
        for (c, &lambda) in e.values.iter().enumerate() {
            if lambda <= cutoff {
                continue;
            }
            let scale = lambda.sqrt();
            let mut col = vec![0.0; d.ambient_n];
            for (p, &i) in b.support.indices().iter().enumerate() {
                col[i] = scale * e.vectors[p * e.n + c];
            }
            columns.push(col);
        }
    }
    Ok(FactorMatrix { n: d.ambient_n, columns })
}

/// BlockDecomposition JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub n: usize,
    pub k: usize,
    pub blocks: Vec<BlockJson>,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockJson {
    pub support: Vec<usize>,
    pub rows: Vec<Vec<Value>>,
}

impl<T: Scalar + ToJsonValue> BlockDecomposition<T> {
    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            n: self.ambient_n,
            k: self.k,
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockJson { support: b.support.indices().to_vec(), rows: matrix_to_json(&b.matrix).rows })
                .collect(),
            residual: self.residual,
        }
    }
}
