use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Dense square complex matrix stored row-major.
///
/// Values are never mutated after a computation hands them back; every
/// operation allocates its result. Constructors that accept external data
/// reject non-finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from rows, validating shape and finiteness.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Shape("matrix must have at least one row".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        let m = Self { dim, data };
        m.ensure_finite()?;
        Ok(m)
    }

    /// Convenience constructor from `(re, im)` pairs; panics on ragged input.
    pub fn from_pairs(rows: &[&[(f64, f64)]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&(re, im)| C64::new(re, im)).collect())
            .collect();
        Self::from_rows(rows).expect("well-formed literal matrix")
    }

    /// Convenience constructor from real rows.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&re| C64::new(re, 0.0)).collect())
            .collect();
        Self::from_rows(rows).expect("well-formed literal matrix")
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// Square matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<C64>]) -> Self {
        let dim = cols.len();
        Self::from_fn(dim, |i, j| cols[j][i])
    }

    pub fn ensure_finite(&self) -> Result<()> {
        if self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    /// `self + c·other` without an intermediate allocation.
    pub fn add_scaled(&self, c: C64, other: &Self) -> Self {
        self.assert_same_dim(other);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + c * b).collect(),
        }
    }

    /// `a·self + b·other` for real coefficients.
    pub fn lin_comb(&self, a: f64, b: f64, other: &Self) -> Self {
        self.assert_same_dim(other);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&x, &y)| x * a + y * b)
                .collect(),
        }
    }

    pub fn shift(&self, lambda: C64) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m[(i, i)] -= lambda;
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        self.assert_same_dim(other);
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `⟨Ax, x⟩ = x* A x`.
    pub fn quadratic_form(&self, x: &[C64]) -> C64 {
        inner(&self.matvec(x), x)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `‖A − A*‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt()
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermitian_defect() <= rel_tol * self.frobenius().max(f64::MIN_POSITIVE) || self.is_zero()
    }

    /// `Re(A) = (A + A*)/2`.
    pub fn re_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// `Im(A) = (A − A*)/(2i)`.
    pub fn im_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            (self[(i, j)] - self[(j, i)].conj()) * C64::new(0.0, -0.5)
        })
    }

    /// Cartesian decomposition `A = H + iK` with `H`, `K` Hermitian.
    pub fn cartesian_parts(&self) -> (Self, Self) {
        (self.re_part(), self.im_part())
    }

    /// `e^{iθ}A`.
    pub fn rotate(&self, theta: f64) -> Self {
        self.scale(C64::from_polar(1.0, theta))
    }

    /// `A^k` for `k ≥ 0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    /// Conjugates by a unitary: `U A U*`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a + b, |i, j| {
            if i < a && j < a {
                self[(i, j)]
            } else if i >= a && j >= a {
                other[(i - a, j - a)]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.assert_same_dim(other);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_dist(&self, other: &Self) -> f64 {
        self.assert_same_dim(other);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn assert_same_dim(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "dimension mismatch: {} vs {}", self.dim, other.dim);
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

macro_rules! elementwise {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                self.assert_same_dim(rhs);
                ComplexMatrix {
                    dim: self.dim,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $tr<ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                (&self).$method(rhs)
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        self.assert_same_dim(rhs);
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        self.assert_same_dim(rhs);
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Mul<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        self.matmul(&rhs)
    }
}

impl Mul<C64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: C64) -> ComplexMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scale_real(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

/// `⟨x, y⟩ = Σ x_i conj(y_i)`, linear in the first slot.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    assert_eq!(x.len(), y.len(), "vector length mismatch");
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Standard basis vector `e_k` in `ℂ^n`.
pub fn basis(n: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[k] = C64::new(1.0, 0.0);
    v
}

/// The rank-one operator `x ⊗ y : z ↦ ⟨z, y⟩ x`, i.e. entries `x_i conj(y_j)`.
pub fn rank_one(x: &[C64], y: &[C64]) -> Result<ComplexMatrix> {
    if x.len() != y.len() {
        return Err(Error::Shape(format!(
            "rank_one: vector lengths {} and {} differ",
            x.len(),
            y.len()
        )));
    }
    if x.is_empty() {
        return Err(Error::Shape("rank_one: empty vectors".into()));
    }
    Ok(ComplexMatrix::from_fn(x.len(), |i, j| x[i] * y[j].conj()))
}

/// Hilbert–Schmidt inner product `⟨A, B⟩ = tr(B*A)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!(
            "hs_inner: dimensions {} and {} differ",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x * y.conj()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn jordan() -> ComplexMatrix {
        ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]])
    }

    #[test]
    fn cartesian_parts_of_hermitian() {
        let h = ComplexMatrix::from_pairs(&[&[(2.0, 0.0), (1.0, -1.0)], &[(1.0, 1.0), (-3.0, 0.0)]]);
        let (re, im) = h.cartesian_parts();
        assert_eq!(re, h);
        assert!(im.is_zero());
    }

    #[test]
    fn cartesian_parts_of_jordan_block() {
        let (re, im) = jordan().cartesian_parts();
        let want_re = ComplexMatrix::from_real(&[&[0.0, 0.5], &[0.5, 0.0]]);
        let want_im = ComplexMatrix::from_pairs(&[&[(0.0, 0.0), (0.0, -0.5)], &[(0.0, 0.5), (0.0, 0.0)]]);
        assert!(re.max_abs_diff(&want_re) < 1e-15);
        assert!(im.max_abs_diff(&want_im) < 1e-15);
    }

    #[test]
    fn rotation_examples() {
        let a = ComplexMatrix::from_pairs(&[&[(1.0, 2.0), (0.5, 0.0)], &[(0.0, -1.0), (3.0, 1.0)]]);
        assert!(a.rotate(0.0).max_abs_diff(&a) < 1e-15);
        assert!(a.rotate(std::f64::consts::PI).max_abs_diff(&(-&a)) < 1e-15);
        let i2 = ComplexMatrix::identity(2).rotate(std::f64::consts::FRAC_PI_2);
        assert!(i2.max_abs_diff(&ComplexMatrix::from_diag(&[I, I])) < 1e-15);
    }

    #[test]
    fn rank_one_basis_cases() {
        let e1 = basis(2, 0);
        let e2 = basis(2, 1);
        assert_eq!(rank_one(&e1, &e2).unwrap(), jordan());
        assert_eq!(rank_one(&e1, &e1).unwrap(), ComplexMatrix::from_real_diag(&[1.0, 0.0]));
        assert!(matches!(rank_one(&e1, &basis(3, 0)), Err(Error::Shape(_))));
    }

    #[test]
    fn rank_one_acts_as_documented() {
        let x = vec![c(1.0, 2.0), c(0.0, -1.0), c(0.5, 0.5)];
        let y = vec![c(-1.0, 0.0), c(2.0, 1.0), c(0.0, 3.0)];
        let z = vec![c(0.3, -0.2), c(1.0, 1.0), c(-2.0, 0.0)];
        let t = rank_one(&x, &y).unwrap();
        let lhs = t.matvec(&z);
        let k = inner(&z, &y);
        for (l, xi) in lhs.iter().zip(&x) {
            assert!((l - k * xi).norm() < 1e-14);
        }
    }

    #[test]
    fn hs_inner_examples() {
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(hs_inner(&i3, &i3).unwrap(), c(3.0, 0.0));
        let j = jordan();
        assert_eq!(hs_inner(&j, &j).unwrap(), c(1.0, 0.0));
        assert!(hs_inner(&j, &i3).is_err());
        // tr(B*A) agrees with the entry sum
        let a = ComplexMatrix::from_pairs(&[&[(1.0, 2.0), (0.5, 0.0)], &[(0.0, -1.0), (3.0, 1.0)]]);
        let b = ComplexMatrix::from_pairs(&[&[(0.0, 1.0), (2.0, -1.0)], &[(1.0, 1.0), (0.0, 0.0)]]);
        let via_trace = b.adjoint().matmul(&a).trace();
        assert!((via_trace - hs_inner(&a, &b).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn from_rows_rejects_bad_input() {
        assert!(matches!(
            ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            ComplexMatrix::from_rows(vec![vec![c(f64::NAN, 0.0)]]),
            Err(Error::NonFinite)
        ));
        assert!(ComplexMatrix::from_rows(vec![]).is_err());
    }

    #[test]
    fn direct_sum_and_pow() {
        let j = jordan();
        assert!(j.pow(2).is_zero());
        let s = j.direct_sum(&ComplexMatrix::identity(1));
        assert_eq!(s.dim(), 3);
        assert_eq!(s[(2, 2)], c(1.0, 0.0));
        assert_eq!(s[(0, 1)], c(1.0, 0.0));
        assert_eq!(s[(0, 2)], c(0.0, 0.0));
    }
}
