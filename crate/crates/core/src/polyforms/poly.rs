use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyforms::monomial::{ExponentTuple, MonomialBasis};
use crate::symcore::io::{format_rational, parse_rational};
use crate::symcore::{Rational, SymMatrix};

/// Homogeneous polynomial with exact coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPoly {
    n: usize,
    degree: u32,
    coefficients: BTreeMap<ExponentTuple, Rational>,
}

impl HomogeneousPoly {
    pub fn zero(n: usize, degree: u32) -> Self {
        Self { n, degree, coefficients: BTreeMap::new() }
    }

    pub fn from_terms(
        n: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (ExponentTuple, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n, degree);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    /// Adds `c * x^e`, rejecting monomials of the wrong shape.
    pub fn add_term(&mut self, e: ExponentTuple, c: Rational) -> Result<()> {
        if e.n() != self.n || e.degree() != self.degree {
            return Err(Error::InvalidArgument(format!(
                "monomial {e} does not have degree {} in {} variables",
                self.degree, self.n
            )));
        }
        self.add_unchecked(e, c);
        Ok(())
    }

    fn add_unchecked(&mut self, e: ExponentTuple, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coefficients.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficient(&self, e: &ExponentTuple) -> Rational {
        self.coefficients.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentTuple, &Rational)> {
        self.coefficients.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (e1, c1) in &self.coefficients {
            for (e2, c2) in &other.coefficients {
                out.add_unchecked(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (e, c) in &self.coefficients {
            out.add_unchecked(e.clone(), c * s);
        }
        out
    }
}

/// `x^T Q x`; the Gram of a quadratic is unique.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    pub q: SymMatrix<Rational>,
}

impl QuadraticForm {
    pub fn new(q: SymMatrix<Rational>) -> Self {
        Self { q }
    }

    pub fn n(&self) -> usize {
        self.q.n()
    }

    pub fn to_poly(&self) -> HomogeneousPoly {
        let n = self.n();
        let mut p = HomogeneousPoly::zero(n, 2);
        for i in 0..n {
            for j in i..n {
                let c =
                    if i == j { self.q.get(i, i).clone() } else { self.q.get(i, j) * Rational::from_integer(2.into()) };
                p.add_unchecked(ExponentTuple::unit(n, i).add(&ExponentTuple::unit(n, j)), c);
            }
        }
        p
    }
}

fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * i)
}

fn compositions(n: usize, total: u32, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if prefix.len() + 1 == n {
        prefix.push(total);
        f(prefix);
        prefix.pop();
        return;
    }
    for e in (0..=total).rev() {
        prefix.push(e);
        compositions(n, total - e, prefix, f);
        prefix.pop();
    }
}

/// `(Σ λ_i² x_i²)^r · x^T Q x`, expanded with the multinomial theorem.
pub fn multiply_weighted_power(q: &QuadraticForm, lambda: &[Rational], r: u32) -> Result<HomogeneousPoly> {
    weighted_power(lambda, q.n(), r)?.mul(&q.to_poly())
}

/// `(Σ λ_i² x_i²)^r`.
pub(crate) fn weighted_power(lambda: &[Rational], n: usize, r: u32) -> Result<HomogeneousPoly> {
    if lambda.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: lambda.len() });
    }
    if lambda.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("multiplier weights are all zero".into()));
    }
    let weights: Vec<Rational> = lambda.iter().map(|l| l * l).collect();
    let r_fact = factorial(r);
    let mut multiplier = HomogeneousPoly::zero(n, 2 * r);
    compositions(n, r, &mut Vec::with_capacity(n), &mut |alpha| {
        let denom = alpha.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a));
        let mut coeff = Rational::new(r_fact.clone(), denom);
        for (w, &a) in weights.iter().zip(alpha) {
            for _ in 0..a {
                coeff *= w;
            }
        }
        multiplier.add_unchecked(ExponentTuple(alpha.iter().map(|a| 2 * a).collect()), coeff);
    });
    Ok(multiplier)
}

/// Coefficient sums by parity pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityAggregates {
    /// Sum over monomials whose exponents are all even.
    pub p0: Rational,
    /// `pairs[(i, j)]`, `i < j`: sum over monomials odd exactly at `i` and `j`.
    pub pairs: BTreeMap<(usize, usize), Rational>,
}

impl ParityAggregates {
    pub fn pair(&self, i: usize, j: usize) -> Rational {
        let key = if i < j { (i, j) } else { (j, i) };
        self.pairs.get(&key).cloned().unwrap_or_else(Rational::zero)
    }
}

pub fn parity_aggregates(p: &HomogeneousPoly) -> Result<ParityAggregates> {
    if p.degree % 2 != 0 {
        return Err(Error::InvalidArgument(format!("parity aggregates need even degree, got {}", p.degree)));
    }
    let mut p0 = Rational::zero();
    let mut pairs = BTreeMap::new();
    for i in 0..p.n {
        for j in (i + 1)..p.n {
            pairs.insert((i, j), Rational::zero());
        }
    }
    for (e, c) in p.terms() {
        match e.odd_positions().as_slice() {
            [] => p0 += c,
            &[i, j] => *pairs.get_mut(&(i, j)).expect("pair present") += c,
            _ => {}
        }
    }
    Ok(ParityAggregates { p0, pairs })
}

/// Polynomial JSON: `{"n": 2, "degree": 2, "terms": [{"exp": [1, 1], "coef": "2"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: serde_json::Value,
}

impl PolyJson {
    pub fn load(&self) -> Result<HomogeneousPoly> {
        let mut p = HomogeneousPoly::zero(self.n, self.degree);
        for t in &self.terms {
            let c = match &t.coef {
                serde_json::Value::String(s) => parse_rational(s)?,
                serde_json::Value::Number(num) => match num.as_i64() {
                    Some(i) => Rational::from_integer(i.into()),
                    None => Rational::from_float(num.as_f64().unwrap_or(f64::NAN))
                        .ok_or_else(|| Error::Malformed(format!("bad coefficient {num}")))?,
                },
                other => return Err(Error::Malformed(format!("coefficient must be a number or string, got {other}"))),
            };
            p.add_term(ExponentTuple(t.exp.clone()), c).map_err(|e| Error::Malformed(e.to_string()))?;
        }
        Ok(p)
    }

    pub fn from_poly(p: &HomogeneousPoly) -> Self {
        Self {
            n: p.n,
            degree: p.degree,
            terms: p
                .terms()
                .map(|(e, c)| TermJson { exp: e.0.clone(), coef: serde_json::Value::String(format_rational(c)) })
                .collect(),
        }
    }
}

pub fn read_poly(path: &Path) -> Result<HomogeneousPoly> {
    let text = std::fs::read_to_string(path)?;
    let file: PolyJson =
        serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    file.load()
}

/// Convenience: the polynomial of a basis-indexed coefficient vector, used in tests
/// and the CLI to build `Σ c_i m_i`.
pub fn poly_from_basis(basis: &MonomialBasis, coeffs: &[Rational]) -> Result<HomogeneousPoly> {
    if coeffs.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: coeffs.len() });
    }
    HomogeneousPoly::from_terms(basis.n(), basis.degree(), basis.tuples().iter().cloned().zip(coeffs.iter().cloned()))
}
