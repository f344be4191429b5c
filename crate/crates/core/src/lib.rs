//! Factor-width cones `FW_k^n`, their duals, and k-nomial sum-of-squares certificates.

pub mod cli;
pub mod dualcone;
pub mod error;
pub mod factorwidth;
pub mod families;
pub mod polyforms;
pub mod symcore;

pub use error::{Error, Result};
