use serde::Serialize;

use crate::dualcone::{
    bnr_certificate, comparison_certificate, cos_certificate_search, dykstra_dual_certificate, eigen_certificate,
    DualCertificate,
};
use crate::error::Result;
use crate::factorwidth::admm::{fw_decompose, DecomposeOutcome, SolverOptions};
use crate::factorwidth::decomposition::BlockDecomposition;
use crate::symcore::SymMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipStatus {
    Member,
    NonMember,
    Inconclusive,
}

impl MembershipStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Member => "member",
            Self::NonMember => "non_member",
            Self::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Diagnostics {
    pub iterations: usize,
    pub primal_residual: f64,
    pub best_residual: f64,
    /// `<B, A>` of the best certificate candidate, verified or not.
    pub certificate_value: Option<f64>,
    pub certificate_source: Option<String>,
}

#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    pub decomposition: Option<BlockDecomposition>,
    pub certificate: Option<DualCertificate>,
    pub diagnostics: Diagnostics,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        self.status == MembershipStatus::Member
    }

    pub fn is_non_member(&self) -> bool {
        self.status == MembershipStatus::NonMember
    }
}

/// Decides `A ∈ FW_k^n`: member with a decomposition, non-member with a re-verified
/// dual certificate, or inconclusive. A stalled solver alone never yields non-member.
pub fn fw_membership(a: &SymMatrix<f64>, k: usize, opts: &SolverOptions) -> Result<MembershipVerdict> {
    let failure = match fw_decompose(a, k, opts)? {
        DecomposeOutcome::Found { decomposition, iterations } => {
            let residual = decomposition.residual();
            return Ok(MembershipVerdict {
                status: MembershipStatus::Member,
                decomposition: Some(decomposition),
                certificate: None,
                diagnostics: Diagnostics {
                    iterations,
                    primal_residual: residual,
                    best_residual: residual,
                    ..Diagnostics::default()
                },
            });
        }
        DecomposeOutcome::Failed(f) => f,
    };
    let mut diagnostics = Diagnostics {
        iterations: failure.iterations,
        primal_residual: failure.final_residual,
        best_residual: failure.best_residual,
        ..Diagnostics::default()
    };
    let mut certificate = search_certificate(a, k)?;
    if let Some(d) = &failure.displacement {
        if let Some(c) = DualCertificate::verify_with_shift(d.scale(&-1.0), a, k)? {
            if certificate.as_ref().is_none_or(|(_, best)| c.normalized_value() < best.normalized_value()) {
                certificate = Some(("splitting", c));
            }
        }
    }
    let status = match &certificate {
        Some((source, c)) => {
            diagnostics.certificate_value = Some(c.value);
            diagnostics.certificate_source = Some(source.to_string());
            MembershipStatus::NonMember
        }
        None => MembershipStatus::Inconclusive,
    };
    Ok(MembershipVerdict { status, decomposition: None, certificate: certificate.map(|(_, c)| c), diagnostics })
}

/// Tries the closed-form candidates first and keeps the most separating one;
/// falls back to Dykstra projections.
pub fn search_certificate(a: &SymMatrix<f64>, k: usize) -> Result<Option<(&'static str, DualCertificate)>> {
    let n = a.n();
    let mut found: Vec<(&'static str, DualCertificate)> = Vec::new();
    if let Some(c) = eigen_certificate(a, k)? {
        found.push(("eigenvector", c));
    }
    if k == 2 {
        if let Some(c) = comparison_certificate(a)? {
            found.push(("comparison", c));
        }
    }
    if k >= 2 {
        let b = bnr_certificate(n, 0, k)?.to_f64();
        if let Some(c) = DualCertificate::verify(b, a, k)? {
            found.push(("uniform", c));
        }
    }
    if n == 4 && k == 3 {
        if let Some(c) = cos_certificate_search(a)? {
            found.push(("cosine_ray", c));
        }
    }
    if found.is_empty() {
        if let Some(c) = dykstra_dual_certificate(a, k)? {
            found.push(("dykstra", c));
        }
    }
    Ok(found.into_iter().min_by(|x, y| x.1.normalized_value().total_cmp(&y.1.normalized_value())))
}
