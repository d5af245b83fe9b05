use super::eig::hermitian_eig;
use super::svd::{svd, SvdParts};
use crate::complexmat::ComplexMatrix;
use crate::error::{Error, Result};

/// `A = U|A|` with `U` the canonical partial isometry (zero on `ker A`).
#[derive(Clone, Debug)]
pub struct PolarParts {
    pub isometry: ComplexMatrix,
    pub modulus: ComplexMatrix,
}

/// `V diag(f(σ)) V*` over the right singular vectors, with `f` applied only
/// to singular values above the zero threshold (others map to 0).
fn right_functional(p: &SvdParts, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let n = p.right.dim();
    let thr = p.zero_threshold();
    let fs: Vec<f64> = p.singulars.iter().map(|&s| if s > thr { f(s) } else { 0.0 }).collect();
    ComplexMatrix::from_fn(n, |i, j| {
        (0..n)
            .filter(|&k| fs[k] != 0.0)
            .map(|k| p.right[(i, k)] * p.right[(j, k)].conj() * fs[k])
            .sum()
    })
}

fn isometry_from(p: &SvdParts) -> ComplexMatrix {
    let n = p.left.dim();
    let r = p.rank();
    ComplexMatrix::from_fn(n, |i, j| (0..r).map(|k| p.left[(i, k)] * p.right[(j, k)].conj()).sum())
}

pub fn polar(a: &ComplexMatrix) -> PolarParts {
    let p = svd(a);
    PolarParts {
        isometry: isometry_from(&p),
        modulus: right_functional(&p, |s| s),
    }
}

/// `|A| = (A*A)^{1/2}`.
pub fn modulus(a: &ComplexMatrix) -> ComplexMatrix {
    right_functional(&svd(a), |s| s)
}

/// `|A|^r` for `r > 0`.
pub fn modulus_power(a: &ComplexMatrix, r: f64) -> ComplexMatrix {
    assert!(r > 0.0, "modulus_power needs a positive exponent");
    right_functional(&svd(a), |s| s.powf(r))
}

/// Aluthge transform `|A|^{1/2} U |A|^{1/2}`.
pub fn aluthge(a: &ComplexMatrix) -> ComplexMatrix {
    let p = svd(a);
    let half = right_functional(&p, f64::sqrt);
    let u = isometry_from(&p);
    half.matmul(&u).matmul(&half)
}

/// `H^r` for PSD `H` and `r > 0`. Eigenvalues down to `−1e-11·λ_max` are
/// clamped to zero; anything more negative is rejected.
pub fn psd_power(h: &ComplexMatrix, r: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let lmax = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let lmin = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if lmin < -1e-11 * lmax || (lmax == 0.0 && lmin < 0.0) {
        return Err(Error::NotPsd(lmin));
    }
    Ok(eig.map(|l| if l > 0.0 { l.powf(r) } else { 0.0 }))
}

pub fn psd_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_power(h, 0.5)
}
