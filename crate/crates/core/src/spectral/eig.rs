//! Hermitian eigenproblems.
//!
//! [`hermitian_eig`] is a cyclic complex Jacobi method and returns an
//! eigenbasis. [`eigenvalues_hermitian`] is the eigenvalue-only path used in
//! the inner loops of the radius and geometry searches: Householder
//! reduction to a real tridiagonal matrix followed by implicit QL.

use crate::complexmat::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Relative Hermitian defect accepted on input.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFF_TOL: f64 = 1e-13;

#[derive(Clone, Debug)]
pub struct HermEig {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` is the eigenvector of `eigenvalues[k]`.
    pub basis: ComplexMatrix,
}

impl HermEig {
    /// `V diag(f(λ)) V*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.basis.dim();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.basis[(i, k)] * self.basis[(j, k)].conj() * fl[k])
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }
}

pub(crate) fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    let defect = h.hermitian_defect();
    let scale = h.frobenius();
    if defect > HERMITIAN_INPUT_TOL * scale {
        return Err(Error::NotHermitian { defect, scale });
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermEig> {
    check_hermitian(h)?;
    let n = h.dim();
    // symmetrize so that rounding in the input cannot leak into the rotations
    let mut a = h.re_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius();

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[(i, j)].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = scale == 0.0 || off_norm(&a) <= JACOBI_OFF_TOL * scale;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                routine: "hermitian_eig",
                sweeps,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= f64::MIN_POSITIVE || mag <= 1e-18 * scale {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase * s; // s·e^{iφ}
                let spc = sp.conj(); // s·e^{−iφ}
                                     // A ← A J with J = [[c, s e^{iφ}], [−s e^{−iφ}, c]] on (p, q)
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * spc;
                    a[(k, q)] = akp * sp + akq * c;
                }
                // A ← J* A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * sp;
                    a[(q, k)] = apk * spc + aqk * c;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(app - t * mag, 0.0);
                a[(q, q)] = C64::new(aqq + t * mag, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * spc;
                    v[(k, q)] = vkp * sp + vkq * c;
                }
            }
        }
        converged = off_norm(&a) <= JACOBI_OFF_TOL * scale;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let basis = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermEig { eigenvalues, basis })
}

/// Eigenvalues of a Hermitian matrix, descending. Validates the input.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    Ok(eigenvalues_hermitian(h))
}

/// Eigenvalues of a matrix assumed Hermitian (only the lower triangle and
/// the real part of the diagonal are read), descending.
pub fn eigenvalues_hermitian(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.dim();
    let mut out = match n {
        0 => Vec::new(),
        1 => vec![h[(0, 0)].re],
        2 => {
            let a = h[(0, 0)].re;
            let d = h[(1, 1)].re;
            let b = h[(1, 0)].norm();
            let mid = 0.5 * (a + d);
            let rad = (0.5 * (a - d)).hypot(b);
            vec![mid + rad, mid - rad]
        }
        _ => {
            let (mut d, mut e) = tridiagonalize(h);
            tql(&mut d, &mut e);
            d
        }
    };
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// Householder reduction to a real symmetric tridiagonal matrix. Returns
/// the diagonal and the moduli of the subdiagonal (a diagonal unitary
/// similarity makes the complex subdiagonal real without changing them).
fn tridiagonalize(h: &ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = h.dim();
    // full Hermitian working copy built from the lower triangle
    let mut a: Vec<C64> = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..=i {
            let z = h[(i, j)];
            a[i * n + j] = z;
            a[j * n + i] = z.conj();
        }
        a[i * n + i] = C64::new(h[(i, i)].re, 0.0);
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![C64::new(0.0, 0.0); n];
    let mut p = vec![C64::new(0.0, 0.0); n];
    for k in 0..n - 2 {
        d[k] = a[k * n + k].re;
        let m = n - k - 1;
        let off = k + 1;
        let mut alpha2 = 0.0;
        for i in 0..m {
            v[i] = a[(off + i) * n + k];
            alpha2 += v[i].norm_sqr();
        }
        let alpha = alpha2.sqrt();
        e[k] = alpha;
        if alpha == 0.0 {
            continue;
        }
        let x0n = v[0].norm();
        let phase = if x0n > 0.0 { v[0] / x0n } else { C64::new(1.0, 0.0) };
        // v = x + phase·α e₁, so that (I − 2vv*/‖v‖²) x = −phase·α e₁
        v[0] += phase * alpha;
        let vnorm = (alpha2 - x0n * x0n + (x0n + alpha) * (x0n + alpha)).sqrt();
        for vi in v.iter_mut().take(m) {
            *vi /= vnorm;
        }
        // p = B v on the trailing block
        let mut beta = 0.0;
        for i in 0..m {
            let row = (off + i) * n + off;
            let mut s = C64::new(0.0, 0.0);
            for j in 0..m {
                s += a[row + j] * v[j];
            }
            p[i] = s;
            beta += (v[i].conj() * s).re;
        }
        // w = p − β v;  B ← B − 2(v w* + w v*)
        for i in 0..m {
            p[i] -= v[i] * beta;
        }
        for i in 0..m {
            let row = (off + i) * n + off;
            let vi2 = v[i] * 2.0;
            let wi2 = p[i] * 2.0;
            for j in 0..m {
                a[row + j] -= vi2 * p[j].conj() + wi2 * v[j].conj();
            }
        }
    }
    d[n - 2] = a[(n - 2) * n + n - 2].re;
    d[n - 1] = a[(n - 1) * n + n - 1].re;
    e[n - 2] = a[(n - 1) * n + n - 2].norm();
    e[n - 1] = 0.0;
    (d, e)
}

/// Implicit QL with Wilkinson-style shifts on a symmetric tridiagonal
/// matrix; `e[i]` couples rows `i` and `i + 1`. Eigenvalues end up in `d`.
fn tql(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                // leave the remaining coupling; accuracy degrades gracefully
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + 1.0).sqrt();
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmat::{hermitian, SeedTree};

    #[test]
    fn diagonal_and_swap_examples() {
        let d = ComplexMatrix::from_real_diag(&[3.0, 1.0, 2.0]);
        assert_eq!(hermitian_eig(&d).unwrap().eigenvalues, vec![3.0, 2.0, 1.0]);
        let x = ComplexMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let ev = hermitian_eig(&x).unwrap().eigenvalues;
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_reconstruction_residual() {
        let mut rng = SeedTree::new(11).rng();
        for n in [1, 2, 3, 5, 8, 16, 32] {
            let h = hermitian(n, &mut rng);
            let eig = hermitian_eig(&h).unwrap();
            let scale = h.frobenius().max(1.0);
            assert!(eig.reconstruct().frobenius_dist(&h) <= 1e-12 * scale, "n={n}");
            let vv = eig.basis.adjoint().matmul(&eig.basis);
            assert!(vv.frobenius_dist(&ComplexMatrix::identity(n)) <= 1e-12, "n={n}");
            assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
        assert!(hermitian_eigenvalues(&a).is_err());
    }

    #[test]
    fn tridiagonal_ql_agrees_with_jacobi() {
        let mut rng = SeedTree::new(12).rng();
        for n in 1..=32 {
            let h = hermitian(n, &mut rng);
            let fast = eigenvalues_hermitian(&h);
            let slow = hermitian_eig(&h).unwrap().eigenvalues;
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() < 1e-12 * (1.0 + h.frobenius()), "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn degenerate_spectra() {
        for n in 1..7 {
            let z = ComplexMatrix::zeros(n);
            assert!(eigenvalues_hermitian(&z).iter().all(|&l| l == 0.0));
            assert!(hermitian_eig(&z).unwrap().eigenvalues.iter().all(|&l| l == 0.0));
            let i = ComplexMatrix::identity(n);
            assert!(eigenvalues_hermitian(&i).iter().all(|&l| (l - 1.0).abs() < 1e-15));
        }
        // already tridiagonal with a zero coupling in the middle
        let t = ComplexMatrix::from_real(&[
            &[1.0, 1.0, 0.0, 0.0],
            &[1.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 3.0, 2.0],
            &[0.0, 0.0, 2.0, 3.0],
        ]);
        let ev = eigenvalues_hermitian(&t);
        let want = [5.0, 2.0, 1.0, 0.0];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
