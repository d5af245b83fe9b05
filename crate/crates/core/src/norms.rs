//! The norm family `N(·)`: operator norm and Schatten `p`-norms, `p ≥ 1`.
//!
//! Every member is selfadjoint (`N(A) = N(A*)`) and unitarily invariant, so
//! `N` is a symmetric function of the singular values. The radius and
//! geometry code only talks to [`NormSpec`], never to a concrete formula.

use std::fmt;
use std::str::FromStr;

use crate::complexmat::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::spectral;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormKind {
    Operator,
    Schatten,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormSpec {
    kind: NormKind,
    p: f64,
}

impl NormSpec {
    pub fn operator() -> Self {
        Self {
            kind: NormKind::Operator,
            p: f64::INFINITY,
        }
    }

    pub fn schatten(p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidNorm(format!(
                "Schatten exponent must be a finite p >= 1, got {p}"
            )));
        }
        Ok(Self {
            kind: NormKind::Schatten,
            p,
        })
    }

    /// Trace norm.
    pub fn trace() -> Self {
        Self::schatten(1.0).expect("p = 1 is valid")
    }

    /// Hilbert–Schmidt (Frobenius) norm.
    pub fn hilbert_schmidt() -> Self {
        Self::schatten(2.0).expect("p = 2 is valid")
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    /// Schatten exponent; `∞` for the operator norm.
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_operator(&self) -> bool {
        self.kind == NormKind::Operator
    }

    pub fn is_schatten(&self, p: f64) -> bool {
        self.kind == NormKind::Schatten && self.p == p
    }

    /// `N(A) = N(A*)`; true for the whole family.
    pub fn selfadjoint(&self) -> bool {
        true
    }

    /// `N(UAV) = N(A)`; true for the whole family.
    pub fn unitarily_invariant(&self) -> bool {
        true
    }

    /// `N(I_n)`.
    pub fn of_identity(&self, n: usize) -> f64 {
        match self.kind {
            NormKind::Operator => 1.0,
            NormKind::Schatten => (n as f64).powf(1.0 / self.p),
        }
    }

    /// The symmetric gauge applied to a list of (absolute) singular values.
    pub fn of_singulars(&self, s: &[f64]) -> f64 {
        let smax = s.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        if smax == 0.0 {
            return 0.0;
        }
        match self.kind {
            NormKind::Operator => smax,
            NormKind::Schatten if self.p == 1.0 => s.iter().map(|x| x.abs()).sum(),
            NormKind::Schatten if self.p == 2.0 => s.iter().map(|x| (x / smax).powi(2)).sum::<f64>().sqrt() * smax,
            NormKind::Schatten => {
                let p = self.p;
                smax * s.iter().map(|x| (x.abs() / smax).powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    }

    /// `N(A)` for a general matrix.
    ///
    /// For the operator norm and `p ≥ 1.5` the singular values come from the
    /// eigenvalues of `A*A`, which is several times cheaper than Jacobi SVD.
    /// Squaring blurs singular values below `√ε·s_max`, but raised to a power
    /// `p ≥ 1.5` they contribute less than `1e-11·s_max`. Smaller `p` keeps
    /// the SVD.
    pub fn eval(&self, a: &ComplexMatrix) -> f64 {
        if self.p == 2.0 {
            a.frobenius()
        } else if self.p >= GRAM_PATH_MIN_P {
            self.of_singulars(&gram_singulars(a))
        } else {
            self.of_singulars(&spectral::singular_values(a))
        }
    }

    /// `N(H)` for a matrix known to be Hermitian: the singular values are the
    /// moduli of the eigenvalues.
    pub fn eval_hermitian(&self, h: &ComplexMatrix) -> f64 {
        self.of_singulars(&spectral::eigenvalues_hermitian(h))
    }

    /// Short label used on the command line and in reports: `op` or `p:<p>`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            NormKind::Operator => f.write_str("op"),
            NormKind::Schatten => write!(f, "p:{}", self.p),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "op" {
            return Ok(Self::operator());
        }
        let p = s
            .strip_prefix("p:")
            .ok_or_else(|| Error::InvalidNorm(format!("expected `op` or `p:<float>`, got `{s}`")))?;
        let p: f64 = p
            .parse()
            .map_err(|_| Error::InvalidNorm(format!("bad Schatten exponent `{p}`")))?;
        Self::schatten(p)
    }
}

const GRAM_PATH_MIN_P: f64 = 1.5;

/// `√λ_i(A*A)`, lower triangle of the Gram matrix only.
fn gram_singulars(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.dim();
    let m = a.as_slice();
    let gram = ComplexMatrix::from_fn(n, |i, j| {
        if j > i {
            return C64::new(0.0, 0.0);
        }
        (0..n).map(|k| m[k * n + i].conj() * m[k * n + j]).sum()
    });
    spectral::eigenvalues_hermitian(&gram)
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect()
}

/// `N(A)`.
pub fn norm_eval(norm: &NormSpec, a: &ComplexMatrix) -> f64 {
    norm.eval(a)
}

/// `tr(A) = Σ ⟨Ae_j, e_j⟩`.
pub fn trace_functional(a: &ComplexMatrix) -> C64 {
    a.trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmat::{ginibre, unitary, SeedTree};
    use proptest::prelude::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn trace_norm_of_diag_plus_identity() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let sum = &a + &ComplexMatrix::identity(2);
        assert!((NormSpec::trace().eval(&sum) - 3.0).abs() < 1e-12);
        assert!((NormSpec::operator().eval(&sum) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn jordan_block_has_unit_norm_for_every_p() {
        let j = ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        for p in [1.0, 1.5, 2.0, 3.0, 7.5] {
            assert!((NormSpec::schatten(p).unwrap().eval(&j) - 1.0).abs() < 1e-15);
        }
        assert_eq!(NormSpec::operator().eval(&j), 1.0);
    }

    #[test]
    fn hilbert_schmidt_matches_entry_sum() {
        let mut rng = SeedTree::new(31).rng();
        for n in [2, 3, 5, 8, 13] {
            let a = ginibre(n, &mut rng);
            let entry_sum = a
                .as_slice()
                .iter()
                .map(|z| z.re * z.re + z.im * z.im)
                .sum::<f64>()
                .sqrt();
            assert!(rel_close(NormSpec::hilbert_schmidt().eval(&a), entry_sum, 1e-12));
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_functional(&ComplexMatrix::identity(4)), C64::new(4.0, 0.0));
        let a = ComplexMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new(0.0, 11.0)]);
        assert!((trace_functional(&a.matmul(&a)) - C64::new(-120.0, 0.0)).norm() < 1e-12);
        let mut rng = SeedTree::new(32).rng();
        let g = ginibre(5, &mut rng);
        let u = unitary(5, &mut rng);
        let conj = u.adjoint().matmul(&g).matmul(&u);
        assert!((trace_functional(&conj) - trace_functional(&g)).norm() <= 1e-12);
    }

    #[test]
    fn gram_path_agrees_with_svd() {
        let mut rng = SeedTree::new(34).rng();
        for n in [2, 3, 5, 8, 16] {
            for a in [ginibre(n, &mut rng), crate::complexmat::square_zero(n, &mut rng)] {
                let s = spectral::singular_values(&a);
                for norm in [
                    NormSpec::operator(),
                    NormSpec::schatten(1.5).unwrap(),
                    NormSpec::schatten(4.0).unwrap(),
                ] {
                    let direct = norm.of_singulars(&s);
                    assert!(rel_close(norm.eval(&a), direct, 1e-10), "n={n} {norm}");
                }
            }
        }
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!("op".parse::<NormSpec>().unwrap(), NormSpec::operator());
        assert_eq!("p:1.5".parse::<NormSpec>().unwrap().p(), 1.5);
        assert_eq!(NormSpec::schatten(3.0).unwrap().to_string(), "p:3");
        for bad in ["p:0.5", "p:-1", "p:abc", "q:2", "p:inf", "p:NaN", ""] {
            assert!(matches!(bad.parse::<NormSpec>(), Err(Error::InvalidNorm(_))), "{bad}");
        }
        assert!(NormSpec::schatten(0.99).is_err());
    }

    #[test]
    fn hermitian_path_matches_general_path() {
        let mut rng = SeedTree::new(33).rng();
        for n in [2, 4, 7] {
            let h = crate::complexmat::hermitian(n, &mut rng);
            for norm in [
                NormSpec::operator(),
                NormSpec::trace(),
                NormSpec::schatten(3.0).unwrap(),
            ] {
                assert!(rel_close(norm.eval(&h), norm.eval_hermitian(&h), 1e-12));
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = ComplexMatrix> {
        (1usize..6, any::<u64>()).prop_map(|(n, seed)| ginibre(n, &mut SeedTree::new(seed).rng()))
    }

    fn arb_norm() -> impl Strategy<Value = NormSpec> {
        prop_oneof![
            Just(NormSpec::operator()),
            (1.0f64..6.0).prop_map(|p| NormSpec::schatten(p).unwrap()),
            Just(NormSpec::trace()),
        ]
    }

    proptest! {
        #[test]
        fn triangle_inequality(n in 1usize..6, s1 in any::<u64>(), s2 in any::<u64>(), norm in arb_norm()) {
            let a = ginibre(n, &mut SeedTree::new(s1).rng());
            let b = ginibre(n, &mut SeedTree::new(s2).rng());
            let lhs = norm.eval(&(&a + &b));
            let rhs = norm.eval(&a) + norm.eval(&b);
            prop_assert!(lhs <= rhs * (1.0 + 1e-10));
        }

        #[test]
        fn submultiplicative(n in 1usize..6, s1 in any::<u64>(), s2 in any::<u64>(), norm in arb_norm()) {
            let a = ginibre(n, &mut SeedTree::new(s1).rng());
            let b = ginibre(n, &mut SeedTree::new(s2).rng());
            prop_assert!(norm.eval(&a.matmul(&b)) <= norm.eval(&a) * norm.eval(&b) * (1.0 + 1e-10));
        }

        #[test]
        fn selfadjoint(a in arb_matrix(), norm in arb_norm()) {
            prop_assert!(rel_close(norm.eval(&a), norm.eval(&a.adjoint()), 1e-11));
        }

        #[test]
        fn monotone_in_p(a in arb_matrix(), p1 in 1.0f64..5.0, dp in 0.01f64..5.0) {
            let n1 = NormSpec::schatten(p1).unwrap().eval(&a);
            let n2 = NormSpec::schatten(p1 + dp).unwrap().eval(&a);
            prop_assert!(n2 <= n1 * (1.0 + 1e-12));
            prop_assert!(NormSpec::operator().eval(&a) <= n2 * (1.0 + 1e-12));
        }

        #[test]
        fn ideal_property(n in 1usize..6, s1 in any::<u64>(), s2 in any::<u64>(), p in 1.0f64..6.0) {
            let t = ginibre(n, &mut SeedTree::new(s1).rng());
            let a = ginibre(n, &mut SeedTree::new(s2).rng());
            let np = NormSpec::schatten(p).unwrap();
            prop_assert!(np.eval(&t.matmul(&a)) <= NormSpec::operator().eval(&t) * np.eval(&a) * (1.0 + 1e-10));
        }

        #[test]
        fn squared_norm_of_gram(a in arb_matrix(), p in prop::sample::select(vec![2.0, 3.0, 4.0])) {
            // ‖A‖_p² = ‖A*A‖_{p/2}; p/2 may fall below 1 so evaluate the gauge directly
            let s = spectral::singular_values(&a);
            let lhs = NormSpec::schatten(p).unwrap().of_singulars(&s).powi(2);
            let gram = spectral::singular_values(&a.adjoint().matmul(&a));
            let q = p / 2.0;
            let rhs = gram.iter().map(|x| x.powf(q)).sum::<f64>().powf(1.0 / q);
            prop_assert!(rel_close(lhs, rhs, 1e-10));
        }

        #[test]
        fn scaling_and_unitary_invariance(n in 1usize..6, seed in any::<u64>(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
            let mut rng = SeedTree::new(seed).rng();
            let a = ginibre(n, &mut rng);
            let u = unitary(n, &mut rng);
            let v = unitary(n, &mut rng);
            let c = C64::new(re, im);
            let s = spectral::singular_values(&a);
            let sc = spectral::singular_values(&a.scale(c));
            let suv = spectral::singular_values(&u.matmul(&a).matmul(&v));
            for ((x, y), z) in s.iter().zip(&sc).zip(&suv) {
                prop_assert!((y - c.norm() * x).abs() <= 1e-12 * (1.0 + c.norm() * s[0]));
                prop_assert!((z - x).abs() <= 1e-11 * (1.0 + s[0]));
            }
        }
    }
}
