//! The cones `FW_k^n` and block decompositions witnessing membership.

pub mod admm;
pub mod decomposition;
pub mod membership;
pub mod supports;

pub use admm::{fw_decompose, DecomposeFailure, DecomposeOutcome, SolverOptions};
pub use decomposition::{
    extract_factors, Block, BlockDecomposition, BlockJson, DecompositionJson, FactorMatrix, BLOCK_PSD_TOL,
};
pub use membership::{fw_membership, search_certificate, Diagnostics, MembershipStatus, MembershipVerdict};
pub use supports::{coverage_counts, enumerate_supports};
