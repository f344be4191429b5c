//! Concrete families: the forms `p_n^a` and the five-variable example.

pub mod fixtures;
pub mod pna;

pub use fixtures::{example_m_fixtures, Fixtures};
pub use pna::{
    pna_form, pna_gram, pna_threshold, pna_witness_decomposition, rank_one_perturb_det, sobs_comparison, PnaSpec,
    SobsVerdict,
};
