use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentTuple(pub Vec<u32>);

impl ExponentTuple {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise sum; panics on a length mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "exponent tuples of different length");
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Self)
    }

    /// Positions of the odd entries.
    pub fn odd_positions(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e % 2 == 1).map(|(i, _)| i).collect()
    }

    /// Parity pattern `ε(i)` as a bit mask (bit ν set iff entry ν is odd).
    pub fn parity_mask(&self) -> u64 {
        self.0.iter().enumerate().fold(0, |m, (i, &e)| m | (u64::from(e % 2) << i))
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All degree-`d` monomials in `n` variables with a fixed order and a reverse index.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n: usize,
    d: u32,
    tuples: Vec<ExponentTuple>,
    index: HashMap<ExponentTuple, usize>,
}

impl PartialEq for MonomialBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.tuples == other.tuples
    }
}

/// `C(n + d - 1, d)`, the number of degree-`d` monomials in `n` variables.
pub fn basis_len(n: usize, d: u32) -> usize {
    binomial(n + d as usize - 1, d as usize)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn push_descending(n: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExponentTuple>) {
    if prefix.len() + 1 == n {
        prefix.push(remaining);
        out.push(ExponentTuple(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in (0..=remaining).rev() {
        prefix.push(e);
        push_descending(n, remaining - e, prefix, out);
        prefix.pop();
    }
}

impl MonomialBasis {
    /// Degree-`d` monomials in descending lexicographic order of exponent vectors.
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("monomial basis needs at least one variable".into()));
        }
        let mut tuples = Vec::with_capacity(basis_len(n, d));
        push_descending(n, d, &mut Vec::with_capacity(n), &mut tuples);
        Ok(Self::from_ordered(n, d, tuples))
    }

    /// A basis in a caller-chosen order. The tuples must be exactly the degree-`d`
    /// monomials in `n` variables, each once.
    pub fn from_tuples(n: usize, d: u32, tuples: Vec<ExponentTuple>) -> Result<Self> {
        if tuples.len() != basis_len(n, d) {
            return Err(Error::InvalidArgument(format!(
                "expected {} monomials of degree {d} in {n} variables, got {}",
                basis_len(n, d),
                tuples.len()
            )));
        }
        if let Some(bad) = tuples.iter().find(|t| t.n() != n || t.degree() != d) {
            return Err(Error::InvalidArgument(format!("monomial {bad} is not of degree {d} in {n} variables")));
        }
        let basis = Self::from_ordered(n, d, tuples);
        if basis.index.len() != basis.tuples.len() {
            return Err(Error::InvalidArgument("repeated monomial in basis".into()));
        }
        Ok(basis)
    }

    fn from_ordered(n: usize, d: u32, tuples: Vec<ExponentTuple>) -> Self {
        let index = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Self { n, d, tuples, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[ExponentTuple] {
        &self.tuples
    }

    pub fn tuple(&self, i: usize) -> &ExponentTuple {
        &self.tuples[i]
    }

    pub fn position(&self, t: &ExponentTuple) -> Option<usize> {
        self.index.get(t).copied()
    }
}
