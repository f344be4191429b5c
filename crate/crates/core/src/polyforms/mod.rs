//! Monomial bases, Gram matrices of forms, multiplier products and parity aggregates.

pub mod gram;
pub mod monomial;
pub mod poly;

pub use gram::{default_gram, gram_to_poly, multiplier_gram, quadratic_gram, soks_test, SoksVerdict};
pub use monomial::{basis_len, binomial, ExponentTuple, MonomialBasis};
pub use poly::{
    multiply_weighted_power, parity_aggregates, read_poly, HomogeneousPoly, ParityAggregates, PolyJson, QuadraticForm,
};
