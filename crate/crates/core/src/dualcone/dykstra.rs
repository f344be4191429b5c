use crate::dualcone::certificate::DualCertificate;
use crate::error::{Error, Result};
use crate::factorwidth::enumerate_supports;
use crate::symcore::psd::clip_negative;
use crate::symcore::{eigen_sym, principal_submatrix, SymMatrix};

pub const DYKSTRA_MAX_CYCLES: usize = 5000;

/// Cyclic Dykstra projections onto `{B : B_K ⪰ 0}` for every `k`-subset `K`,
/// started at `-Q / ||Q||_F`.
///
/// After each cycle the iterate is tested as a certificate. An iterate that misses
/// dual feasibility by `δ` on its worst minor is also tried shifted by `(δ + ε) I`,
/// which lifts every minor by the same amount.
pub fn dykstra_dual_certificate(q: &SymMatrix<f64>, k: usize) -> Result<Option<DualCertificate>> {
    dykstra_with_cycles(q, k, DYKSTRA_MAX_CYCLES)
}

pub fn dykstra_with_cycles(q: &SymMatrix<f64>, k: usize, max_cycles: usize) -> Result<Option<DualCertificate>> {
    let n = q.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={n}")));
    }
    let norm = q.frobenius_norm();
    if norm == 0.0 || !q.is_finite() {
        return Ok(None);
    }
    let supports = enumerate_supports(n, k)?;
    let mut x = q.scale(&(-1.0 / norm));
    let mut corr: Vec<SymMatrix<f64>> = supports.iter().map(|_| SymMatrix::zeros(k)).collect();

    for _ in 0..max_cycles {
        for (s, p) in supports.iter().zip(corr.iter_mut()) {
            let idx = s.indices();
            let y = principal_submatrix(&x, s)?.add(p)?;
            let proj = clip_negative(&eigen_sym(&y)?);
            *p = y.sub(&proj)?;
            for a in 0..k {
                for b in a..k {
                    x.set(idx[a], idx[b], *proj.get(a, b));
                }
            }
        }
        if let Some(c) = DualCertificate::verify_with_shift(x.clone(), q, k)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}
