//! Dense symmetric matrices, spectral routines and psd tests.

pub mod eigen;
pub mod io;
pub mod matrix;
pub mod psd;

pub use eigen::{eigen_sym, EigenResult};
pub use matrix::{
    embed, frobenius_inner, int, principal_submatrix, rat, scale_congruence, Congruence, Rational, Scalar, Support,
    SymMatrix,
};
pub use psd::{exact_psd, is_psd, min_eigenvalue, numerical_rank, project_psd, PsdReport, DEFAULT_PSD_TOL};
