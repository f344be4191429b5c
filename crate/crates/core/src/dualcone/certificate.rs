use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorwidth::enumerate_supports;
use crate::symcore::io::{matrix_to_json, MatrixJson};
use crate::symcore::{exact_psd, frobenius_inner, min_eigenvalue, principal_submatrix, Scalar, Support, SymMatrix};

/// Relative tolerance for accepting a minor as psd in a certificate.
pub const CERT_PSD_TOL: f64 = 1e-9;

/// A certificate must pair below `-CERT_MARGIN · ||Q||_F · ||B||_F`.
pub const CERT_MARGIN: f64 = 1e-8;

/// Result of checking every `k×k` principal submatrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualReport {
    pub is_member: bool,
    /// Support attaining the smallest minor eigenvalue (first in lex order on ties).
    pub worst_support: Vec<usize>,
    pub worst_margin: f64,
    pub supports_checked: usize,
    pub tolerance_used: f64,
}

/// Membership of `b` in the dual cone `(FW_k^n)*`: all `k×k` principal submatrices psd.
///
/// With exact input and `tol == 0` every minor is decided exactly.
pub fn dual_membership<T: Scalar>(b: &SymMatrix<T>, k: usize, tol: f64) -> Result<DualReport> {
    let supports = enumerate_supports(b.n(), k)?;
    let exact = T::EXACT && tol == 0.0;
    let mut all_psd = true;
    let mut worst: Option<(f64, &Support)> = None;
    for s in &supports {
        let minor = principal_submatrix(b, s)?;
        let mut lambda = min_eigenvalue(&minor);
        if exact {
            let ok = exact_psd(&minor);
            all_psd &= ok;
            lambda = if ok { lambda.max(0.0) } else { lambda.min(-f64::MIN_POSITIVE) };
        }
        if worst.is_none_or(|(w, _)| lambda < w) {
            worst = Some((lambda, s));
        }
    }
    let (worst_margin, worst_support) = worst.expect("at least one support");
    let tolerance_used = if exact { 0.0 } else { tol * (1.0 + b.max_abs()) };
    let is_member = if exact { all_psd } else { worst_margin >= -tolerance_used };
    Ok(DualReport {
        is_member,
        worst_support: worst_support.indices().to_vec(),
        worst_margin,
        supports_checked: supports.len(),
        tolerance_used,
    })
}

/// `B ∈ (FW_k^n)*` with `<B, Q> < 0`: a witness that `Q ∉ FW_k^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCertificate {
    pub b: SymMatrix<f64>,
    pub k: usize,
    /// `<B, Q>` for the target `Q`.
    pub value: f64,
    pub worst_minor_margin: f64,
    /// `||B||_F`.
    pub normalization: f64,
    /// `||Q||_F` of the target the value refers to.
    pub target_norm: f64,
}

impl DualCertificate {
    /// Measures `b` against `q` without judging it.
    pub fn evaluate(b: SymMatrix<f64>, q: &SymMatrix<f64>, k: usize) -> Result<(Self, DualReport)> {
        if b.n() != q.n() {
            return Err(Error::DimensionMismatch { expected: q.n(), got: b.n() });
        }
        let report = dual_membership(&b, k, CERT_PSD_TOL)?;
        let value = frobenius_inner(&b, q)?;
        let cert = Self {
            normalization: b.frobenius_norm(),
            target_norm: q.frobenius_norm(),
            worst_minor_margin: report.worst_margin,
            value,
            k,
            b,
        };
        Ok((cert, report))
    }

    /// Returns the certificate only if it independently verifies against `q`.
    pub fn verify(b: SymMatrix<f64>, q: &SymMatrix<f64>, k: usize) -> Result<Option<Self>> {
        let (cert, report) = Self::evaluate(b, q, k)?;
        Ok((report.is_member && cert.separates()).then_some(cert))
    }

    /// Like [`verify`](Self::verify), but if `b` misses the dual cone by `δ` on its worst
    /// minor, also tries `b + (δ + ε) I`, which lifts every minor by the same amount.
    pub fn verify_with_shift(b: SymMatrix<f64>, q: &SymMatrix<f64>, k: usize) -> Result<Option<Self>> {
        let (cert, report) = Self::evaluate(b, q, k)?;
        if report.is_member {
            return Ok(cert.separates().then_some(cert));
        }
        let n = q.n();
        let shift = -report.worst_margin + 1e-10 * (1.0 + cert.b.max_abs());
        let shifted = cert.b.add(&SymMatrix::identity(n).scale(&shift))?;
        Self::verify(shifted, q, k)
    }

    /// `value <= -CERT_MARGIN · ||Q||_F · ||B||_F`, with a strict sign.
    pub fn separates(&self) -> bool {
        self.value < 0.0 && self.value <= -CERT_MARGIN * self.target_norm * self.normalization
    }

    /// `<B, Q> / (||B||_F ||Q||_F)`.
    pub fn normalized_value(&self) -> f64 {
        self.value / (self.normalization * self.target_norm)
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            n: self.b.n(),
            k: self.k,
            b: matrix_to_json(&self.b),
            value: self.value,
            worst_minor_margin: self.worst_minor_margin,
            normalization: self.normalization,
        }
    }
}

/// DualCertificate JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "B")]
    pub b: MatrixJson,
    pub value: f64,
    pub worst_minor_margin: f64,
    pub normalization: f64,
}

/// Rank-one psd certificate `v v^T` from an eigenvector of a negative eigenvalue.
/// Psd matrices lie in every dual cone, so this works for all `k`.
pub fn eigen_certificate(q: &SymMatrix<f64>, k: usize) -> Result<Option<DualCertificate>> {
    let e = crate::symcore::eigen_sym(q)?;
    if e.min_value() >= 0.0 {
        return Ok(None);
    }
    let v = e.vector(0);
    let b = SymMatrix::from_fn(q.n(), |i, j| v[i] * v[j]);
    DualCertificate::verify(b, q, k)
}
