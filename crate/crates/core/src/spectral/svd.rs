//! Singular value decomposition by one-sided (Hestenes) Jacobi.
//!
//! Columns of a working copy of `A` are rotated pairwise until mutually
//! orthogonal; the column norms are then the singular values. Working on
//! `A` directly rather than on `A*A` keeps small singular values accurate
//! to `ε·‖A‖` in absolute terms, which matters for trace-norm quantities.

use crate::complexmat::{orthonormalize, ComplexMatrix, C64};

const MAX_SWEEPS: usize = 100;
const ORTHO_TOL: f64 = 1e-15;

#[derive(Clone, Debug)]
pub struct SvdParts {
    pub left: ComplexMatrix,
    /// Descending, nonnegative.
    pub singulars: Vec<f64>,
    pub right: ComplexMatrix,
}

impl SvdParts {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.left.dim();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.left[(i, k)] * self.singulars[k] * self.right[(j, k)].conj())
                .sum()
        })
    }

    /// Singular values at or below this are treated as zero when forming
    /// left vectors and partial isometries.
    pub fn zero_threshold(&self) -> f64 {
        let n = self.singulars.len() as f64;
        1e-12 * n * self.singulars.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values above [`Self::zero_threshold`].
    pub fn rank(&self) -> usize {
        let thr = self.zero_threshold();
        self.singulars.iter().filter(|&&s| s > thr).count()
    }
}

/// Rotates column pairs of `cols` (and of `right`, when present) until all
/// pairs are orthogonal to working precision.
fn orthogonalize_columns(cols: &mut [Vec<C64>], mut right: Option<&mut [Vec<C64>]>) {
    let n = cols.len();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for j in 0..n {
            for k in j + 1..n {
                let (lo, hi) = cols.split_at_mut(k);
                let gj = &mut lo[j];
                let gk = &mut hi[0];
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = C64::new(0.0, 0.0);
                for (x, y) in gj.iter().zip(gk.iter()) {
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                let mag = gamma.norm();
                if mag <= ORTHO_TOL * (alpha * beta).sqrt() || mag == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / mag;
                let tau = (beta - alpha) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sp = phase * (t * c);
                let spc = sp.conj();
                for (x, y) in gj.iter_mut().zip(gk.iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = a * c - b * spc;
                    *y = a * sp + b * c;
                }
                if let Some(v) = right.as_deref_mut() {
                    let (lo, hi) = v.split_at_mut(k);
                    for (x, y) in lo[j].iter_mut().zip(hi[0].iter_mut()) {
                        let (a, b) = (*x, *y);
                        *x = a * c - b * spc;
                        *y = a * sp + b * c;
                    }
                }
            }
        }
        if !rotated {
            return;
        }
    }
}

fn columns(a: &ComplexMatrix) -> Vec<Vec<C64>> {
    (0..a.dim()).map(|j| a.column(j)).collect()
}

fn col_norm(c: &[C64]) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Singular values of `a`, descending.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.dim();
    match n {
        1 => return vec![a[(0, 0)].norm()],
        2 => {
            // s_max from the Frobenius/determinant pair, s_min = |det|/s_max
            let f2 = a.frobenius_sq();
            let det = (a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)]).norm();
            let disc = ((f2 - 2.0 * det) * (f2 + 2.0 * det)).max(0.0).sqrt();
            let smax = (0.5 * (f2 + disc)).sqrt();
            let smin = if smax > 0.0 { det / smax } else { 0.0 };
            return vec![smax, smin.min(smax)];
        }
        _ => {}
    }
    let mut cols = columns(a);
    orthogonalize_columns(&mut cols, None);
    let mut s: Vec<f64> = cols.iter().map(|c| col_norm(c)).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Full SVD `A = U Σ V*`.
pub fn svd(a: &ComplexMatrix) -> SvdParts {
    let n = a.dim();
    let mut cols = columns(a);
    let mut right: Vec<Vec<C64>> = (0..n).map(|j| crate::complexmat::basis(n, j)).collect();
    orthogonalize_columns(&mut cols, Some(&mut right));

    let norms: Vec<f64> = cols.iter().map(|c| col_norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let singulars: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let smax = singulars.first().copied().unwrap_or(0.0);
    let thr = 1e-12 * n as f64 * smax;

    let mut left_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for &i in &order {
        if norms[i] > thr {
            left_cols.push(cols[i].iter().map(|z| z / norms[i]).collect());
        }
    }
    let left_cols = complete_basis(left_cols, n);
    let right_cols: Vec<Vec<C64>> = order.iter().map(|&i| right[i].clone()).collect();
    SvdParts {
        left: ComplexMatrix::from_columns(&left_cols),
        singulars,
        right: ComplexMatrix::from_columns(&right_cols),
    }
}

/// Extends orthonormal `cols` to a basis of `ℂ^n` with standard basis
/// vectors orthogonalized against what is already there.
pub(crate) fn complete_basis(mut cols: Vec<Vec<C64>>, n: usize) -> Vec<Vec<C64>> {
    let mut k = 0;
    while cols.len() < n && k < n {
        let mut trial = cols.clone();
        trial.push(crate::complexmat::basis(n, k));
        if let Some(q) = orthonormalize(trial) {
            cols = q;
        }
        k += 1;
    }
    debug_assert_eq!(cols.len(), n);
    cols
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmat::{ginibre, nilpotent, SeedTree};

    #[test]
    fn documented_examples() {
        let j = ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(singular_values(&j), vec![1.0, 0.0]);
        assert_eq!(svd(&j).singulars, vec![1.0, 0.0]);
        let d = ComplexMatrix::from_diag(&[C64::new(3.0, 0.0), C64::new(0.0, -4.0)]);
        let s = svd(&d).singulars;
        assert!((s[0] - 4.0).abs() < 1e-15 && (s[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn reconstruction_and_unitarity() {
        let mut rng = SeedTree::new(5).rng();
        for n in [1, 2, 3, 4, 6, 8, 16, 32] {
            for a in [ginibre(n, &mut rng), nilpotent(n, &mut rng)] {
                let p = svd(&a);
                let scale = a.frobenius().max(1.0);
                assert!(p.reconstruct().frobenius_dist(&a) <= 1e-11 * scale, "n={n}");
                let id = ComplexMatrix::identity(n);
                assert!(p.left.adjoint().matmul(&p.left).frobenius_dist(&id) < 1e-11);
                assert!(p.right.adjoint().matmul(&p.right).frobenius_dist(&id) < 1e-11);
                assert!(p.singulars.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn adjoint_has_same_singulars() {
        let mut rng = SeedTree::new(6).rng();
        for n in [2, 3, 6] {
            let a = ginibre(n, &mut rng);
            let s1 = svd(&a).singulars;
            let s2 = svd(&a.adjoint()).singulars;
            for (x, y) in s1.iter().zip(&s2) {
                assert!((x - y).abs() <= 1e-11);
            }
        }
    }

    #[test]
    fn fast_paths_agree_with_full_svd() {
        let mut rng = SeedTree::new(8).rng();
        for n in 1..=8 {
            let a = ginibre(n, &mut rng);
            let fast = singular_values(&a);
            let full = svd(&a).singulars;
            for (x, y) in fast.iter().zip(&full) {
                assert!((x - y).abs() <= 1e-13, "n={n}");
            }
        }
    }

    #[test]
    fn rank_deficient_matrices() {
        let z = ComplexMatrix::zeros(3);
        let p = svd(&z);
        assert_eq!(p.singulars, vec![0.0; 3]);
        assert_eq!(p.rank(), 0);
        let id = ComplexMatrix::identity(3);
        assert!(p.left.adjoint().matmul(&p.left).frobenius_dist(&id) < 1e-14);
        let x = vec![C64::new(1.0, 1.0), C64::new(0.0, 2.0), C64::new(-1.0, 0.0)];
        let r1 = crate::complexmat::rank_one(&x, &x).unwrap();
        assert_eq!(svd(&r1).rank(), 1);
    }
}
