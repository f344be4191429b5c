//! Closed-form members of the dual cones.

use num_traits::Zero;

use crate::dualcone::certificate::DualCertificate;
use crate::error::{Error, Result};
use crate::polyforms::MonomialBasis;
use crate::symcore::{eigen_sym, int, Rational, Scalar, SymMatrix};

/// `B_{n,r}` over degree `r + 1` monomials: `k - 1` where `i + j` is all even, `-1` elsewhere.
pub fn bnr_certificate(n: usize, r: u32, k: usize) -> Result<SymMatrix<Rational>> {
    if n == 0 || k < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and k >= 2 (got n = {n}, k = {k})")));
    }
    let basis = MonomialBasis::new(n, r + 1)?;
    let diag = int(k as i64 - 1);
    Ok(SymMatrix::from_fn(basis.len(), |i, j| {
        if basis.tuple(i).add(basis.tuple(j)).parity_mask() == 0 {
            diag.clone()
        } else {
            int(-1)
        }
    }))
}

/// Lifts a unit-diagonal `4×4` matrix to the degree `r + 1` monomial basis in four
/// variables. Entry `(i, j)` is decided by the odd positions of `i + j`: none gives 1,
/// exactly `{k, l}` gives `b_kl`, four gives `omega`, one or three give 0.
pub fn lift_quaternary_certificate<T: Scalar>(b4: &SymMatrix<T>, r: u32, omega: T) -> Result<SymMatrix<T>> {
    if b4.n() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: b4.n() });
    }
    let one = T::one();
    for i in 0..4 {
        if !unit(b4.get(i, i)) {
            return Err(Error::InvalidArgument(format!("diagonal entry {i} is {:?}, expected 1", b4.get(i, i))));
        }
    }
    let basis = MonomialBasis::new(4, r + 1)?;
    Ok(SymMatrix::from_fn(basis.len(), |i, j| {
        let odd = basis.tuple(i).add(basis.tuple(j)).odd_positions();
        match odd.as_slice() {
            [] => one.clone(),
            &[k, l] => b4.get(k, l).clone(),
            [_, _, _, _] => omega.clone(),
            _ => T::zero(),
        }
    }))
}

fn unit<T: Scalar>(x: &T) -> bool {
    if T::EXACT {
        x.is_one()
    } else {
        (x.to_f64() - 1.0).abs() <= 1e-12
    }
}

/// Certificate for `Q ∉ FW_2^n` from the comparison matrix `Q̂` (diagonal kept,
/// off-diagonal `-|q_ij|`). With `v` a unit eigenvector of `λ_min(Q̂) < 0`,
/// `B_ii = v_i²`, `B_ij = -sign(q_ij) |v_i v_j|` has psd `2×2` minors and
/// `<B, Q> = |v|^T Q̂ |v| <= λ_min(Q̂)`.
pub fn comparison_certificate(q: &SymMatrix<f64>) -> Result<Option<DualCertificate>> {
    let n = q.n();
    if n < 2 {
        return Ok(None);
    }
    let hat = SymMatrix::from_fn(n, |i, j| if i == j { *q.get(i, i) } else { -q.get(i, j).abs() });
    let e = eigen_sym(&hat)?;
    if e.min_value() >= 0.0 {
        return Ok(None);
    }
    let v = e.vector(0);
    let b = SymMatrix::from_fn(n, |i, j| {
        if i == j {
            v[i] * v[i]
        } else if q.get(i, j).is_zero() {
            0.0
        } else {
            -q.get(i, j).signum() * (v[i] * v[j]).abs()
        }
    });
    DualCertificate::verify(b, q, 2)
}
