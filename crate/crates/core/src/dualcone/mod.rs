//! The dual cones `(FW_k^n)*` and separating certificates.

pub mod certificate;
pub mod cosray;
pub mod dykstra;
pub mod extreme;
pub mod structured;

pub use certificate::{
    dual_membership, eigen_certificate, CertificateJson, DualCertificate, DualReport, CERT_MARGIN, CERT_PSD_TOL,
};
pub use cosray::{cos_certificate_search, cos_ray, cos_search_ray, CosExtremeRay};
pub use dykstra::{dykstra_dual_certificate, dykstra_with_cycles, DYKSTRA_MAX_CYCLES};
pub use extreme::{check_extreme_candidate, ExtremeReport};
pub use structured::{bnr_certificate, comparison_certificate, lift_quaternary_certificate};
