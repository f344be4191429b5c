//! Non-psd extreme rays of `(FW_3^4)*`, up to permutation and diagonal scaling:
//!
//! ```text
//! ⎡ 1        cos a      cos(a−c)  cos c    ⎤
//! ⎢ cos a    1          cos c     cos(a−c) ⎥
//! ⎢ cos(a−c) cos c      1         cos a    ⎥
//! ⎣ cos c    cos(a−c)   cos a     1        ⎦
//! ```

use std::f64::consts::PI;

use crate::dualcone::certificate::DualCertificate;
use crate::error::{Error, Result};
use crate::symcore::{frobenius_inner, SymMatrix};

pub const GRID: usize = 64;
pub const REFINE_ITERS: usize = 200;
const MIN_VALUE: f64 = -1e-8;

/// A ray `D P C(a, c) P^T D` of the cosine family.
#[derive(Clone, Debug, PartialEq)]
pub struct CosExtremeRay {
    pub a: f64,
    pub c: f64,
    /// `(P^T X P)_{ij} = X_{perm[i], perm[j]}` convention of [`crate::symcore::Congruence`].
    pub permutation: [usize; 4],
    pub diag_scale: [f64; 4],
}

impl CosExtremeRay {
    /// `sin a`, `sin c` and `sin(a−c)` all nonzero: the ray is not psd.
    pub fn is_non_psd(&self) -> bool {
        let s = (self.a.sin() * self.c.sin() * (self.a - self.c).sin()).abs();
        s > 1e-12 && self.diag_scale.iter().all(|d| *d != 0.0)
    }

    pub fn matrix(&self) -> SymMatrix<f64> {
        placed(&cos_ray(self.a, self.c), &self.permutation, &self.diag_scale)
    }
}

/// The unit-diagonal cosine matrix of the family.
pub fn cos_ray(a: f64, c: f64) -> SymMatrix<f64> {
    let (ca, cc, cac) = (a.cos(), c.cos(), (a - c).cos());
    SymMatrix::from_rows(&[
        vec![1.0, ca, cac, cc],
        vec![ca, 1.0, cc, cac],
        vec![cac, cc, 1.0, ca],
        vec![cc, cac, ca, 1.0],
    ])
    .expect("symmetric by construction")
}

/// `D X D` with `X` the rows/columns of `base` permuted by `perm` into place:
/// the returned matrix has `base[i][j]` at `(perm[i], perm[j])`.
fn placed(base: &SymMatrix<f64>, perm: &[usize; 4], d: &[f64; 4]) -> SymMatrix<f64> {
    let mut inv = [0; 4];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    SymMatrix::from_fn(4, |i, j| d[i] * base.get(inv[i], inv[j]) * d[j])
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn grid_angle(i: usize) -> f64 {
    -PI + (i as f64 + 0.5) * 2.0 * PI / GRID as f64
}

fn objective(q: &SymMatrix<f64>, ray: &CosExtremeRay) -> f64 {
    let x = ray.matrix();
    frobenius_inner(&x, q).expect("4×4") / x.frobenius_norm()
}

/// Grid-then-refine search for a separating ray of `(FW_3^4)*`.
///
/// Minimizes `<X, Q> / ||X||_F` over rays `X = D P C(a, c) P^T D`: a 64×64 grid of
/// angles, all 24 permutations and all sign patterns, then coordinate descent on
/// `(a, c)` and on positive diagonal scales. Returns a certificate only if the minimum
/// is below `-1e-8` and it verifies at `k = 3`; `None` proves nothing.
pub fn cos_certificate_search(q: &SymMatrix<f64>) -> Result<Option<DualCertificate>> {
    let (best, value) = cos_search_ray(q)?;
    if value >= MIN_VALUE {
        return Ok(None);
    }
    DualCertificate::verify(best.matrix(), q, 3)
}

/// The minimizing ray and its normalized value.
pub fn cos_search_ray(q: &SymMatrix<f64>) -> Result<(CosExtremeRay, f64)> {
    if q.n() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: q.n() });
    }
    let perms = permutations4();
    let signs: Vec<[f64; 4]> =
        (0..16u32).map(|m| std::array::from_fn(|i| if m >> i & 1 == 1 { -1.0 } else { 1.0 })).collect();

    // <D P C P^T D, Q> = <C, (P^T D Q D P)>; precompute the transformed targets
    let mut targets = Vec::with_capacity(perms.len() * signs.len());
    for (pi, perm) in perms.iter().enumerate() {
        for (si, s) in signs.iter().enumerate() {
            let t = SymMatrix::from_fn(4, |i, j| s[perm[i]] * q.get(perm[i], perm[j]) * s[perm[j]]);
            targets.push(((pi, si), t));
        }
    }

    let mut best: Option<(f64, (usize, usize, usize, usize))> = None;
    for ia in 0..GRID {
        for ic in 0..GRID {
            let c = cos_ray(grid_angle(ia), grid_angle(ic));
            let norm = c.frobenius_norm();
            for ((pi, si), t) in &targets {
                let v = frobenius_inner(&c, t)? / norm;
                let key = (ia, ic, *pi, *si);
                // strict improvement only: the first (lexicographically smallest) minimizer wins
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, key));
                }
            }
        }
    }
    let (_, (ia, ic, pi, si)) = best.expect("nonempty grid");
    let mut ray = CosExtremeRay { a: grid_angle(ia), c: grid_angle(ic), permutation: perms[pi], diag_scale: signs[si] };
    let value = refine(q, &mut ray);
    Ok((ray, value))
}

/// Coordinate descent on the angles and on multiplicative diagonal scales.
fn refine(q: &SymMatrix<f64>, ray: &mut CosExtremeRay) -> f64 {
    let mut value = objective(q, ray);
    let mut angle_step = 2.0 * PI / GRID as f64;
    let mut log_step = 0.5;
    for _ in 0..REFINE_ITERS {
        let mut improved = false;
        for coord in 0..6 {
            for dir in [-1.0, 1.0] {
                let mut trial = ray.clone();
                match coord {
                    0 => trial.a += dir * angle_step,
                    1 => trial.c += dir * angle_step,
                    s => trial.diag_scale[s - 2] *= (dir * log_step).exp(),
                }
                let v = objective(q, &trial);
                if v < value {
                    value = v;
                    *ray = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            angle_step *= 0.5;
            log_step *= 0.5;
        }
    }
    value
}
