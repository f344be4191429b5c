mod common;

use fwcone::dualcone::{bnr_certificate, dual_membership};
use fwcone::factorwidth::{extract_factors, fw_membership, SolverOptions};
use fwcone::polyforms::{
    default_gram, gram_to_poly, multiply_weighted_power, parity_aggregates, ExponentTuple, HomogeneousPoly,
    MonomialBasis, QuadraticForm,
};
use fwcone::symcore::{embed, frobenius_inner, int, scale_congruence, Congruence, Rational, Support, SymMatrix};
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_rational, random_rational_sym};

/// Sum of random rank-two psd blocks `L L^T` on random `k`-subsets.
fn random_member(rng: &mut impl Rng, n: usize, k: usize, blocks: usize) -> SymMatrix<Rational> {
    let mut a = SymMatrix::zeros(n);
    for _ in 0..blocks {
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.gen_range(i..n);
            idx.swap(i, j);
        }
        idx.truncate(k);
        let l: Vec<Vec<Rational>> = (0..k).map(|_| (0..2).map(|_| random_rational(rng, 3, 2)).collect()).collect();
        let block = SymMatrix::from_fn(k, |i, j| l[i][0].clone() * l[j][0].clone() + l[i][1].clone() * l[j][1].clone());
        a = a.add(&embed(&block, &Support::new(idx, n).unwrap(), n).unwrap()).unwrap();
    }
    a
}

fn random_poly(rng: &mut impl Rng, n: usize, degree: u32) -> HomogeneousPoly {
    let basis = MonomialBasis::new(n, degree).unwrap();
    let mut terms = Vec::new();
    for t in basis.tuples() {
        if rng.gen_bool(0.6) {
            terms.push((t.clone(), random_rational(rng, 5, 3)));
        }
    }
    HomogeneousPoly::from_terms(n, degree, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn default_gram_represents_its_polynomial(seed in any::<u64>(), n in 1usize..4, half in 1u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, n, 2 * half);
        let basis = MonomialBasis::new(n, half).unwrap();
        let g = default_gram(&p, &basis).unwrap();
        prop_assert_eq!(gram_to_poly(&g, &basis).unwrap(), p);
    }

    #[test]
    fn members_pair_nonnegatively_with_uniform_certificates(seed in any::<u64>(), n in 3usize..6, r in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(2..=n);
        let b = bnr_certificate(n, r, k).unwrap();
        // b is indexed by monomials of degree r + 1
        let a = random_member(&mut rng, b.n(), k, 4);
        prop_assert!(dual_membership(&b, k, 0.0).unwrap().is_member);
        prop_assert!(!frobenius_inner(&a, &b).unwrap().is_negative());
    }

    #[test]
    fn multiplied_quadratics_are_odd_in_at_most_two_places(seed in any::<u64>(), n in 2usize..5, r in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = QuadraticForm::new(random_rational_sym(&mut rng, n));
        let lambda: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(1..=3))).collect();
        let p = multiply_weighted_power(&q, &lambda, r).unwrap();
        for (e, _) in p.terms() {
            prop_assert!(e.odd_positions().len() <= 2);
        }
        // the aggregates partition p(1, ..., 1)
        let agg = parity_aggregates(&p).unwrap();
        let total: Rational = p.terms().map(|(_, c)| c.clone()).sum();
        let split: Rational = agg.p0.clone() + agg.pairs.values().cloned().sum::<Rational>();
        prop_assert_eq!(total, split);
    }
}

#[test]
fn constructed_members_are_accepted_and_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let opts = SolverOptions::default();
    for (n, k) in [(4, 2), (5, 3), (5, 2), (6, 3)] {
        // a positive diagonal keeps the target off the boundary
        let a = random_member(&mut rng, n, k, 6).add(&SymMatrix::identity(n)).unwrap().to_f64();
        let v = fw_membership(&a, k, &opts).unwrap();
        assert!(v.is_member(), "n={n} k={k}: {:?}", v.diagnostics);
        let d = v.decomposition.unwrap();
        let f = extract_factors(&d).unwrap();
        assert!(f.max_column_support() <= k);
        let err = f.gram().sub(&a).unwrap().max_abs();
        assert!(err <= 1e-6 * (1.0 + a.max_abs()), "reconstruction error {err}");
    }
}

#[test]
fn verdicts_survive_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = SolverOptions::default();
    let perm = Congruence::Permutation(vec![2, 0, 3, 1]);
    let diag = Congruence::Diagonal(vec![int(1), int(2), Rational::new(1.into(), 3.into()), int(5)]);
    let flip = Congruence::Diagonal(vec![int(1), int(-1), int(1), int(-1)]);
    let member = random_member(&mut rng, 4, 2, 5).add(&SymMatrix::identity(4)).unwrap();
    let outsider: SymMatrix<Rational> = SymMatrix::from_fn(4, |i, j| if i == j { int(13) / int(10) } else { int(1) });
    for (a, expect_member) in [(member, true), (outsider, false)] {
        for (q, signed) in [(&perm, false), (&diag, false), (&flip, true)] {
            let b = scale_congruence(&a, q, signed).unwrap().to_f64();
            let v = fw_membership(&b, 2, &opts).unwrap();
            assert_eq!(v.is_member(), expect_member);
            assert_eq!(v.is_non_member(), !expect_member);
        }
    }
}

#[test]
fn membership_is_monotone_in_width() {
    let opts = SolverOptions::default();
    for a in [1.1, 1.4, 1.6, 2.2, 2.9, 3.1] {
        let m: SymMatrix<f64> = SymMatrix::from_fn(5, |i, j| if i == j { a } else { 1.0 });
        let verdicts: Vec<_> = (1..=5).map(|k| fw_membership(&m, k, &opts).unwrap()).collect();
        for k in 0..4 {
            if verdicts[k].is_member() {
                assert!(verdicts[k + 1].is_member(), "a={a} width {}", k + 1);
            }
            if verdicts[k + 1].is_non_member() {
                assert!(verdicts[k].is_non_member(), "a={a} width {}", k + 1);
            }
        }
        assert!(verdicts[4].is_member());
    }
}

#[test]
fn certificates_never_accompany_members() {
    // weak duality on random data: a decomposition and a separating certificate cannot coexist
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let opts = SolverOptions { max_iter: 4000, ..SolverOptions::default() };
    for _ in 0..20 {
        let n = 4;
        let a = random_rational_sym(&mut rng, n).add(&SymMatrix::identity(n).scale(&int(2))).unwrap().to_f64();
        let v = fw_membership(&a, 2, &opts).unwrap();
        assert!(!(v.decomposition.is_some() && v.certificate.is_some()));
        if let Some(c) = v.certificate {
            assert!(c.value < 0.0 && dual_membership(&c.b, 2, 1e-9).unwrap().is_member);
        }
        if let Some(d) = v.decomposition {
            assert!(d.blocks().iter().all(|b| b.support.len() <= 2));
        }
    }
}

#[test]
fn monomial_tuples_index_their_basis() {
    let basis = MonomialBasis::new(3, 2).unwrap();
    for (i, t) in basis.tuples().iter().enumerate() {
        assert_eq!(basis.position(t), Some(i));
    }
    assert_eq!(basis.position(&ExponentTuple::new(vec![3, 0, 0])), None);
}
