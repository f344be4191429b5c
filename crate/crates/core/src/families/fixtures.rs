use num_traits::One;

use crate::error::{Error, Result};
use crate::polyforms::{gram_to_poly, multiply_weighted_power, ExponentTuple, MonomialBasis, QuadraticForm};
use crate::symcore::io::parse_rational;
use crate::symcore::{frobenius_inner, int, Rational, Support, SymMatrix};

const M_ROWS: [[i64; 5]; 5] = [
    [49, -21, 37, -37, -21],
    [-21, 17, -21, 21, 29],
    [37, -21, 41, -25, -33],
    [-37, 21, -25, 41, 33],
    [-21, 29, -33, 33, 73],
];

const A_ROWS: [[i64; 5]; 5] =
    [[3, 1, -2, 2, -1], [1, 3, 0, 0, -1], [-2, 0, 2, -1, 1], [2, 0, -1, 2, -1], [-1, -1, 1, -1, 1]];

/// Gram of `(Σ x_i²) q_M` over the quadratic monomials ordered
/// `x1², x1x2, x2², x1x3, x2x3, x3², …` (see [`Fixtures::qprime_basis`]).
const QPRIME_ROWS: [[&str; 15]; 15] = [
    ["49", "-21", "0", "37", "0", "0", "-37", "0", "-5", "0", "-21", "0", "0", "0", "0"],
    ["-21", "66", "-21", "-21", "37", "-11/5", "21", "-37", "0", "-17/5", "29", "-21", "0", "0", "0"],
    ["0", "-21", "17", "0", "-21", "0", "0", "21", "0", "0", "0", "29", "0", "0", "0"],
    ["37", "-21", "0", "90", "-94/5", "37", "-20", "0", "-37", "0", "-33", "0", "-14", "0", "0"],
    ["0", "37", "-21", "-94/5", "58", "-21", "0", "-25", "21", "0", "0", "-33", "29", "0", "-4"],
    ["0", "-11/5", "0", "37", "-21", "41", "0", "0", "-25", "0", "-7", "0", "-33", "0", "0"],
    ["-37", "21", "0", "-20", "0", "0", "90", "-88/5", "37", "-37", "33", "0", "0", "-12", "0"],
    ["0", "-37", "21", "0", "-25", "0", "-88/5", "58", "-21", "21", "0", "33", "0", "29", "17/5"],
    ["-5", "0", "0", "-37", "21", "-25", "37", "-21", "82", "-25", "0", "0", "33", "-33", "-23/5"],
    ["0", "-17/5", "0", "0", "0", "0", "-37", "21", "-25", "41", "-9", "0", "0", "33", "0"],
    ["-21", "29", "0", "-33", "0", "-7", "33", "0", "0", "-9", "122", "-21", "37", "-37", "-21"],
    ["0", "-21", "29", "0", "-33", "0", "0", "33", "0", "0", "-21", "90", "-17", "88/5", "29"],
    ["0", "0", "0", "-14", "29", "-33", "0", "0", "33", "0", "37", "-17", "114", "-102/5", "-33"],
    ["0", "0", "0", "0", "0", "0", "-12", "29", "-33", "33", "-37", "88/5", "-102/5", "114", "33"],
    ["0", "0", "0", "0", "-4", "0", "0", "17/5", "-23/5", "0", "-21", "29", "-33", "33", "73"],
];

/// 1-based, over the same monomial order as `QPRIME_ROWS`.
const SUPPORTS27: [[usize; 4]; 27] = [
    [1, 2, 4, 7],
    [1, 2, 4, 11],
    [1, 2, 7, 11],
    [1, 4, 7, 9],
    [2, 3, 5, 8],
    [2, 3, 5, 12],
    [2, 3, 8, 12],
    [2, 4, 5, 6],
    [2, 5, 8, 12],
    [2, 7, 8, 10],
    [3, 5, 8, 12],
    [4, 5, 6, 9],
    [4, 5, 6, 13],
    [4, 5, 9, 13],
    [4, 6, 11, 13],
    [5, 6, 9, 13],
    [5, 12, 13, 15],
    [7, 8, 9, 10],
    [7, 8, 9, 14],
    [7, 10, 11, 14],
    [8, 9, 10, 14],
    [8, 12, 14, 15],
    [9, 13, 14, 15],
    [11, 12, 13, 14],
    [11, 12, 13, 15],
    [11, 12, 14, 15],
    [11, 13, 14, 15],
];

/// The five-variable example: a quadratic `q_M` outside `FW_4^5`, the separating
/// `A`, and a Gram `Q'` of `(Σ x_i²) q_M` decomposable over 27 supports.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub m: SymMatrix<Rational>,
    pub a: SymMatrix<Rational>,
    pub qprime: SymMatrix<Rational>,
    /// Monomial order indexing `qprime` and `supports27`.
    pub qprime_basis: MonomialBasis,
    /// 0-based.
    pub supports27: Vec<Support>,
}

/// Loads the embedded constants and checks their defining relations:
/// `<A, M> = -1` and `z^T Q' z = (Σ x_i²) x^T M x`.
pub fn example_m_fixtures() -> Result<Fixtures> {
    let corrupt = |what: &str| Error::FixtureCorrupt(what.to_string());
    let m = int_matrix(&M_ROWS)?;
    let a = int_matrix(&A_ROWS)?;
    let rows = QPRIME_ROWS
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let qprime = SymMatrix::from_rows(&rows).map_err(|e| corrupt(&format!("Q': {e}")))?;
    let qprime_basis = colex_quadratic_basis(5)?;
    let supports27 =
        SUPPORTS27.iter().map(|s| Support::new(s.iter().map(|i| i - 1).collect(), 15)).collect::<Result<Vec<_>>>()?;

    if frobenius_inner(&a, &m)? != int(-1) {
        return Err(corrupt("<A, M> != -1"));
    }
    let lifted = multiply_weighted_power(&QuadraticForm::new(m.clone()), &vec![Rational::one(); 5], 1)?;
    if gram_to_poly(&qprime, &qprime_basis)? != lifted {
        return Err(corrupt("Q' is not a Gram of (Σ x_i²) q_M"));
    }
    if supports27.len() != 27 || supports27.iter().any(|s| s.len() != 4) {
        return Err(corrupt("support list"));
    }
    Ok(Fixtures { m, a, qprime, qprime_basis, supports27 })
}

impl Fixtures {
    pub fn q_m(&self) -> QuadraticForm {
        QuadraticForm::new(self.m.clone())
    }

    /// `Q'` and the 27 supports re-indexed to the default descending-lex basis.
    pub fn qprime_canonical(&self) -> Result<(SymMatrix<Rational>, Vec<Support>)> {
        let target = MonomialBasis::new(5, 2)?;
        let pos: Vec<usize> =
            self.qprime_basis.tuples().iter().map(|t| target.position(t).expect("same monomial set")).collect();
        let mut inv = vec![0; pos.len()];
        for (i, &p) in pos.iter().enumerate() {
            inv[p] = i;
        }
        let q = SymMatrix::from_fn(15, |i, j| self.qprime.get(inv[i], inv[j]).clone());
        let supports = self
            .supports27
            .iter()
            .map(|s| Support::new(s.indices().iter().map(|&i| pos[i]).collect(), 15))
            .collect::<Result<Vec<_>>>()?;
        Ok((q, supports))
    }
}

fn int_matrix(rows: &[[i64; 5]; 5]) -> Result<SymMatrix<Rational>> {
    let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    SymMatrix::from_rows(&rows).map_err(|e| Error::FixtureCorrupt(e.to_string()))
}

/// `x_i x_j` for `i <= j`, ordered by `j` then `i`.
fn colex_quadratic_basis(n: usize) -> Result<MonomialBasis> {
    let mut tuples = Vec::new();
    for j in 0..n {
        for i in 0..=j {
            tuples.push(ExponentTuple::unit(n, i).add(&ExponentTuple::unit(n, j)));
        }
    }
    MonomialBasis::from_tuples(n, 2, tuples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    #[test]
    fn published_entries() {
        let f = example_m_fixtures().unwrap();
        assert_eq!(*f.m.get(0, 0), int(49));
        assert_eq!(*f.m.get(4, 4), int(73));
        assert_eq!(*f.qprime.get(1, 1), int(66));
        assert_eq!(*f.qprime.get(1, 5), rat(-11, 5));
        assert_eq!(f.supports27.len(), 27);
        assert_eq!(f.supports27[0].indices(), &[0, 1, 3, 6]);
    }

    #[test]
    fn canonical_order_is_a_gram_too() {
        let f = example_m_fixtures().unwrap();
        let (q, supports) = f.qprime_canonical().unwrap();
        let basis = MonomialBasis::new(5, 2).unwrap();
        let lifted = multiply_weighted_power(&f.q_m(), &vec![Rational::one(); 5], 1).unwrap();
        assert_eq!(gram_to_poly(&q, &basis).unwrap(), lifted);
        assert_eq!(supports.len(), 27);
        // x1² comes first in both orders
        assert_eq!(q.get(0, 0), f.qprime.get(0, 0));
    }
}
