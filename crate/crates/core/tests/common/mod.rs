#![allow(dead_code)]

use std::collections::BTreeMap;

use fwcone::symcore::{int, Rational, SymMatrix};
use num_traits::Zero;
use rand::Rng;

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(m: &SymMatrix<f64>) -> f64 {
    let n = m.n();
    let mut a: Vec<Vec<f64>> = m.rows();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in (c + 1)..n {
            let f = a[r][c] / a[c][c];
            for j in c..n {
                a[r][j] -= f * a[c][j];
            }
        }
    }
    d
}

pub fn minor(m: &SymMatrix<f64>, keep: &[usize]) -> SymMatrix<f64> {
    SymMatrix::from_fn(keep.len(), |i, j| *m.get(keep[i], keep[j]))
}

/// Polynomials as exponent-vector maps, expanded naively.
pub type Poly = BTreeMap<Vec<u32>, Rational>;

pub fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        for (f, d) in q {
            let g: Vec<u32> = e.iter().zip(f).map(|(a, b)| a + b).collect();
            *out.entry(g).or_insert_with(Rational::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn quadratic(q: &SymMatrix<Rational>) -> Poly {
    let n = q.n();
    let mut out = Poly::new();
    for i in 0..n {
        for j in 0..n {
            let mut e = vec![0; n];
            e[i] += 1;
            e[j] += 1;
            *out.entry(e).or_insert_with(Rational::zero) += q.get(i, j).clone();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(Σ λ_i² x_i²)^r · x^T Q x`, by repeated multiplication.
pub fn weighted_power_oracle(q: &SymMatrix<Rational>, lambda: &[Rational], r: u32) -> Poly {
    let n = q.n();
    let mut g = Poly::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 2;
        g.insert(e, &lambda[i] * &lambda[i]);
    }
    let mut out = quadratic(q);
    for _ in 0..r {
        out = poly_mul(&out, &g);
    }
    out
}

/// `(p0, p_ij)` summed straight from the monomial list.
pub fn aggregates_oracle(p: &Poly, n: usize) -> (Rational, Vec<Vec<Rational>>) {
    let mut p0 = Rational::zero();
    let mut pij = vec![vec![Rational::zero(); n]; n];
    for (e, c) in p {
        let odd: Vec<usize> = (0..n).filter(|&i| e[i] % 2 == 1).collect();
        match odd.as_slice() {
            [] => p0 += c,
            &[i, j] => {
                pij[i][j] += c;
                pij[j][i] += c;
            }
            _ => {}
        }
    }
    (p0, pij)
}

pub fn random_rational(rng: &mut impl Rng, span: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-span..=span).into(), rng.gen_range(1..=den).into())
}

pub fn random_rational_sym(rng: &mut impl Rng, n: usize) -> SymMatrix<Rational> {
    SymMatrix::from_fn(n, |_, _| random_rational(rng, 9, 4))
}

pub fn ones(n: usize) -> Vec<Rational> {
    vec![int(1); n]
}
