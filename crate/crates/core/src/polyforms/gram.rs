use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factorwidth::{fw_membership, MembershipVerdict, SolverOptions};
use crate::polyforms::monomial::{ExponentTuple, MonomialBasis};
use crate::polyforms::poly::{weighted_power, HomogeneousPoly, QuadraticForm};
use crate::symcore::{int, Rational, SymMatrix};

/// `z(x)^T Q z(x)` over `basis`.
pub fn gram_to_poly(gram: &SymMatrix<Rational>, basis: &MonomialBasis) -> Result<HomogeneousPoly> {
    if gram.n() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: gram.n() });
    }
    let two = int(2);
    let mut acc: BTreeMap<ExponentTuple, Rational> = BTreeMap::new();
    for i in 0..gram.n() {
        for j in i..gram.n() {
            let v = gram.get(i, j);
            if v.is_zero() {
                continue;
            }
            let c = if i == j { v.clone() } else { v * &two };
            *acc.entry(basis.tuple(i).add(basis.tuple(j))).or_insert_with(Rational::zero) += c;
        }
    }
    HomogeneousPoly::from_terms(basis.n(), 2 * basis.degree(), acc)
}

/// The unique Gram of a quadratic: `Q_ii = coeff(x_i²)`, `Q_ij = coeff(x_i x_j) / 2`.
pub fn quadratic_gram(p: &HomogeneousPoly) -> Result<SymMatrix<Rational>> {
    if p.degree() != 2 {
        return Err(Error::InvalidArgument(format!("expected a quadratic, got degree {}", p.degree())));
    }
    let n = p.n();
    let half = Rational::new(1.into(), 2.into());
    Ok(SymMatrix::from_fn(n, |i, j| {
        let e = ExponentTuple::unit(n, i).add(&ExponentTuple::unit(n, j));
        let c = p.coefficient(&e);
        if i == j {
            c
        } else {
            c * &half
        }
    }))
}

/// A canonical Gram: each coefficient is split evenly over the index pairs
/// `(i, j)`, `i <= j`, whose monomials multiply to it.
pub fn default_gram(p: &HomogeneousPoly, basis: &MonomialBasis) -> Result<SymMatrix<Rational>> {
    if p.degree() % 2 != 0 || p.degree() != 2 * basis.degree() || p.n() != basis.n() {
        return Err(Error::InvalidArgument(format!(
            "degree-{} polynomial in {} variables does not match a degree-{} basis in {} variables",
            p.degree(),
            p.n(),
            basis.degree(),
            basis.n()
        )));
    }
    let mut gram = SymMatrix::<Rational>::zeros(basis.len());
    for (m, c) in p.terms() {
        let pairs: Vec<(usize, usize)> = basis
            .tuples()
            .iter()
            .enumerate()
            .filter_map(|(i, t)| {
                let j = basis.position(&m.checked_sub(t)?)?;
                (i <= j).then_some((i, j))
            })
            .collect();
        if pairs.is_empty() {
            return Err(Error::GramMismatch(format!("monomial {m} is not a product of basis monomials")));
        }
        let share = c / Rational::from_integer(pairs.len().into());
        let half_share = &share / int(2);
        for (i, j) in pairs {
            let add = if i == j { share.clone() } else { half_share.clone() };
            let v = gram.get(i, j) + add;
            gram.set(i, j, v);
        }
    }
    Ok(gram)
}

/// Gram of `(Σ λ_i² x_i²)^r · x^T Q x` over the degree `r + 1` basis that places a
/// scaled copy of `Q` on the monomials `x^α x_1, …, x^α x_n` for every term `c_α x^{2α}`
/// of the multiplier. It is a positive combination of principal embeddings of `Q`,
/// so it lies in `FW_k` whenever `Q` does.
pub fn multiplier_gram(q: &QuadraticForm, lambda: &[Rational], r: u32) -> Result<SymMatrix<Rational>> {
    let n = q.n();
    let multiplier = weighted_power(lambda, n, r)?;
    let basis = MonomialBasis::new(n, r + 1)?;
    let mut gram = SymMatrix::<Rational>::zeros(basis.len());
    for (e, c) in multiplier.terms() {
        let half = ExponentTuple(e.exponents().iter().map(|x| x / 2).collect());
        let at: Vec<usize> = (0..n)
            .map(|i| basis.position(&half.add(&ExponentTuple::unit(n, i))).expect("degree r + 1 monomial"))
            .collect();
        for i in 0..n {
            for j in i..n {
                let v = gram.get(at[i], at[j]) + c * q.q.get(i, j);
                gram.set(at[i], at[j], v);
            }
        }
    }
    Ok(gram)
}

/// Outcome of a k-nomial sum-of-squares test.
#[derive(Clone, Debug)]
pub struct SoksVerdict {
    pub verdict: MembershipVerdict,
    /// True when the polynomial has more than one Gram, so a negative verdict only
    /// speaks about the Gram that was tested.
    pub gram_conditional: bool,
}

/// Tests whether `p` is a sum of squares of `k`-nomials through the given Gram.
///
/// `basis` defaults to the descending-lex basis of degree `deg(p) / 2`.
pub fn soks_test(
    p: &HomogeneousPoly,
    k: usize,
    gram: &SymMatrix<Rational>,
    basis: Option<&MonomialBasis>,
    opts: &SolverOptions,
) -> Result<SoksVerdict> {
    if p.degree() % 2 != 0 {
        return Err(Error::InvalidArgument(format!("odd degree {}", p.degree())));
    }
    let owned;
    let basis = match basis {
        Some(b) => b,
        None => {
            owned = MonomialBasis::new(p.n(), p.degree() / 2)?;
            &owned
        }
    };
    let represented = gram_to_poly(gram, basis)?;
    if &represented != p {
        return Err(Error::GramMismatch("z^T G z differs from the polynomial".into()));
    }
    let verdict = fw_membership(&gram.to_f64(), k, opts)?;
    Ok(SoksVerdict { verdict, gram_conditional: p.degree() > 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::poly::QuadraticForm;
    use crate::symcore::rat;

    fn poly(n: usize, d: u32, terms: &[(&[u32], Rational)]) -> HomogeneousPoly {
        HomogeneousPoly::from_terms(n, d, terms.iter().map(|(e, c)| (ExponentTuple(e.to_vec()), c.clone()))).unwrap()
    }

    #[test]
    fn identity_gram_is_sum_of_squares_of_variables() {
        let b = MonomialBasis::new(2, 1).unwrap();
        let p = gram_to_poly(&SymMatrix::identity(2), &b).unwrap();
        assert_eq!(p, poly(2, 2, &[(&[2, 0], int(1)), (&[0, 2], int(1))]));
        let ones = SymMatrix::from_fn(2, |_, _| int(1));
        let p = gram_to_poly(&ones, &b).unwrap();
        assert_eq!(p, poly(2, 2, &[(&[2, 0], int(1)), (&[1, 1], int(2)), (&[0, 2], int(1))]));
    }

    #[test]
    fn quadratic_grams() {
        let p = poly(2, 2, &[(&[2, 0], int(1)), (&[1, 1], int(2)), (&[0, 2], int(1))]);
        assert_eq!(quadratic_gram(&p).unwrap(), SymMatrix::from_fn(2, |_, _| int(1)));
        let d = poly(2, 2, &[(&[2, 0], int(1)), (&[0, 2], int(-1))]);
        assert_eq!(quadratic_gram(&d).unwrap(), SymMatrix::diagonal(&[int(1), int(-1)]));
        assert!(quadratic_gram(&poly(1, 4, &[(&[4], int(1))])).is_err());
        // default_gram has no choice to make for a quadratic
        let b = MonomialBasis::new(2, 1).unwrap();
        assert_eq!(default_gram(&p, &b).unwrap(), quadratic_gram(&p).unwrap());
    }

    #[test]
    fn quartic_single_variable() {
        let b = MonomialBasis::new(1, 2).unwrap();
        let p = poly(1, 4, &[(&[4], int(1))]);
        assert_eq!(default_gram(&p, &b).unwrap(), SymMatrix::identity(1));
    }

    #[test]
    fn cross_term_mass_is_split() {
        // x²y² = (x²)(y²) = (xy)(xy): two pairs, half each
        let b = MonomialBasis::new(2, 2).unwrap();
        let p = poly(2, 4, &[(&[2, 2], int(1))]);
        let g = default_gram(&p, &b).unwrap();
        let (xx, xy, yy) = (0, 1, 2);
        assert_eq!(*g.get(xy, xy), rat(1, 2));
        assert_eq!(*g.get(xx, yy), rat(1, 4));
        assert_eq!(gram_to_poly(&g, &b).unwrap(), p);
    }

    #[test]
    fn soks_validates_the_gram() {
        let q = QuadraticForm::new(SymMatrix::from_fn(2, |_, _| int(1)));
        let p = q.to_poly();
        let wrong = SymMatrix::identity(2);
        let err = soks_test(&p, 2, &wrong, None, &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, Error::GramMismatch(_)));
        let ok = soks_test(&p, 2, &q.q, None, &SolverOptions::default()).unwrap();
        assert!(ok.verdict.is_member());
        assert!(!ok.gram_conditional);
    }

    #[test]
    fn multiplier_gram_round_trips() {
        let q = QuadraticForm::new(
            SymMatrix::from_rows(&[
                vec![int(2), int(1), rat(-1, 2)],
                vec![int(1), int(3), int(0)],
                vec![rat(-1, 2), int(0), int(1)],
            ])
            .unwrap(),
        );
        let lambda = [int(1), int(2), rat(1, 3)];
        for r in 0..3 {
            let g = multiplier_gram(&q, &lambda, r).unwrap();
            let basis = MonomialBasis::new(3, r + 1).unwrap();
            let p = crate::polyforms::multiply_weighted_power(&q, &lambda, r).unwrap();
            assert_eq!(gram_to_poly(&g, &basis).unwrap(), p);
        }
    }
}
