//! Norm-parallelism, Birkhoff–James orthogonality (for `N` and for `w_N`),
//! linear dependence and the trace-form characterizations of parallelism.
//!
//! Exact equalities cannot be decided in floating point, so each predicate
//! reports the quantity it thresholds (a gap or a defect) next to the
//! boolean. Thresholds are relative: `τ_par = 1e-7·(N(A)+N(B))`,
//! `τ_orth = 1e-7·N(X)`.

use std::f64::consts::PI;

use crate::complexmat::{hs_inner, ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::norms::NormSpec;
use crate::optim::{minimize_convex_2d, refine_periodic_max, MaxSearch};
use crate::radius::wn_max_with;
use crate::spectral;

/// Relative threshold for parallelism and orthogonality decisions.
pub const DECISION_TOL: f64 = 1e-7;
/// Relative threshold for the trace-form equalities.
pub const TRACE_TOL: f64 = 1e-8;
/// Smallest-to-largest Gram eigenvalue ratio treated as dependence.
pub const DEPENDENCE_TOL: f64 = 1e-10;

const CONVEX_REL_TOL: f64 = 1e-10;

/// Grid used for searches over the unit circle.
pub fn unimodular_search() -> MaxSearch {
    MaxSearch::with_grid(4096)
}

fn unimodular(phi: f64) -> C64 {
    C64::from_polar(1.0, phi)
}

fn same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!(
            "operands have dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParallelWitness {
    pub is_parallel: bool,
    /// Best unimodular `λ` found.
    pub lambda: C64,
    /// `N(A) + N(B) − max_φ N(A + e^{iφ}B)`.
    pub gap: f64,
    /// Decision threshold `τ_par`.
    pub threshold: f64,
}

/// Decides `A ∥^N B`: `N(A + λB) = N(A) + N(B)` for some `|λ| = 1`.
pub fn parallel_witness(a: &ComplexMatrix, b: &ComplexMatrix, norm: &NormSpec) -> Result<ParallelWitness> {
    parallel_witness_with(a, b, norm, &unimodular_search())
}

pub fn parallel_witness_with(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    norm: &NormSpec,
    cfg: &MaxSearch,
) -> Result<ParallelWitness> {
    same_dim(a, b)?;
    if a.is_zero() {
        return Err(Error::ZeroOperand("A"));
    }
    if b.is_zero() {
        return Err(Error::ZeroOperand("B"));
    }
    let na = norm.eval(a);
    let nb = norm.eval(b);
    let threshold = DECISION_TOL * (na + nb);

    let (lambda, gap) = if norm.is_schatten(2.0) {
        // ‖A + λB‖₂² = ‖A‖₂² + ‖B‖₂² + 2 Re(λ̄⟨A,B⟩), largest at λ = phase of ⟨A,B⟩
        let ip = hs_inner(a, b)?;
        let lambda = if ip.norm() > 0.0 {
            ip / ip.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let best = (na * na + nb * nb + 2.0 * ip.norm()).max(0.0).sqrt();
        let gap = 2.0 * (na * nb - ip.norm()).max(0.0) / (na + nb + best);
        (lambda, gap)
    } else {
        let f = |phi: f64| norm.eval(&a.add_scaled(unimodular(phi), b));
        let values: Vec<f64> = cfg.nodes(2.0 * PI).map(f).collect();
        let best = refine_periodic_max(&values, 2.0 * PI, cfg, f);
        (unimodular(best.arg), na + nb - best.value)
    };
    Ok(ParallelWitness {
        is_parallel: gap <= threshold,
        lambda,
        gap,
        threshold,
    })
}

/// Whether `A` and `B` are linearly dependent, judged by the Hilbert–Schmidt
/// Gram matrix `[[⟨A,A⟩, ⟨A,B⟩], [⟨B,A⟩, ⟨B,B⟩]]`.
pub fn linear_dependence(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<bool> {
    Ok(dependence_ratio(a, b)? <= DEPENDENCE_TOL)
}

/// `λ_min/λ_max` of the Hilbert–Schmidt Gram matrix of `(A, B)`; zero for
/// dependent pairs and one for orthogonal pairs of equal norm.
pub fn dependence_ratio(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    same_dim(a, b)?;
    let aa = a.frobenius_sq();
    let bb = b.frobenius_sq();
    let ab = hs_inner(a, b)?.norm();
    let half_tr = 0.5 * (aa + bb);
    let rad = (0.5 * (aa - bb)).hypot(ab);
    let lmax = half_tr + rad;
    if lmax == 0.0 {
        return Ok(0.0);
    }
    let det = (aa * bb - ab * ab).max(0.0);
    Ok(det / lmax / lmax)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrthoWitness {
    pub is_orthogonal: bool,
    /// Smallest value of the map `γ ↦ ‖X + γY‖` found.
    pub min_value: f64,
    pub gamma_min: C64,
    /// `‖X‖`, the value at `γ = 0`.
    pub base: f64,
    /// Decision threshold `τ_orth`.
    pub threshold: f64,
}

impl OrthoWitness {
    /// How far below `‖X‖` the search got; nonnegative.
    pub fn drop(&self) -> f64 {
        (self.base - self.min_value).max(0.0)
    }

    fn decide(base: f64, min_value: f64, gamma_min: C64) -> Self {
        let threshold = DECISION_TOL * base;
        let (min_value, gamma_min) = if min_value < base {
            (min_value, gamma_min)
        } else {
            (base, C64::new(0.0, 0.0))
        };
        Self {
            is_orthogonal: min_value >= base - threshold,
            min_value,
            gamma_min,
            base,
            threshold,
        }
    }
}

/// Decides `X ⊥_N Y`: `N(X) ≤ N(X + γY)` for all complex `γ`.
///
/// For `|γ| > 2N(X)/N(Y)` the triangle inequality already gives
/// `N(X + γY) > N(X)`, so the convex minimization runs on that square.
pub fn bj_orthogonal(x: &ComplexMatrix, y: &ComplexMatrix, norm: &NormSpec) -> Result<OrthoWitness> {
    same_dim(x, y)?;
    if y.is_zero() {
        return Err(Error::ZeroOperand("Y"));
    }
    let nx = norm.eval(x);
    let ny = norm.eval(y);
    if norm.is_schatten(2.0) {
        // Hilbert space: the minimizer is the orthogonal projection
        let ip = hs_inner(x, y)?;
        let gamma = -ip / (ny * ny);
        let drop = ip.norm_sqr() / (ny * ny);
        let min_value = (nx * nx - drop).max(0.0).sqrt();
        return Ok(OrthoWitness::decide(nx, min_value, gamma));
    }
    let radius = 2.0 * nx / ny;
    let (gamma, min_value) = minimize_convex_2d(
        |g| norm.eval(&x.add_scaled(g, y)),
        C64::new(0.0, 0.0),
        radius,
        CONVEX_REL_TOL,
    );
    Ok(OrthoWitness::decide(nx, min_value, gamma))
}

/// Decides `T ⊥_{w_N} A`: `w_N(T) ≤ w_N(T + λA)` for all complex `λ`.
pub fn wn_orthogonal(t: &ComplexMatrix, a: &ComplexMatrix, norm: &NormSpec) -> Result<OrthoWitness> {
    wn_orthogonal_with(t, a, norm, &MaxSearch::default(), 1e-8)
}

/// [`wn_orthogonal`] with explicit inner search parameters and relative
/// tolerance of the outer convex minimization.
pub fn wn_orthogonal_with(
    t: &ComplexMatrix,
    a: &ComplexMatrix,
    norm: &NormSpec,
    cfg: &MaxSearch,
    rel_tol: f64,
) -> Result<OrthoWitness> {
    same_dim(t, a)?;
    if a.is_zero() {
        return Err(Error::ZeroOperand("A"));
    }
    let wt = wn_max_with(t, norm, cfg).value;
    let wa = wn_max_with(a, norm, cfg).value;
    let radius = 2.0 * wt / wa;
    let (lambda, min_value) = minimize_convex_2d(
        |l| wn_max_with(&t.add_scaled(l, a), norm, cfg).value,
        C64::new(0.0, 0.0),
        radius,
        rel_tol,
    );
    Ok(OrthoWitness::decide(wt, min_value, lambda))
}

/// Both sides of `‖A‖_p |tr(|A|^{p−1}U*B)| = ‖B‖_p tr|A|^p` with
/// `A = U|A|`. Hölder's inequality makes the left side never larger.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceCondition {
    pub lhs: f64,
    pub rhs: f64,
}

impl TraceCondition {
    /// `(rhs − lhs)/rhs`, clamped at zero.
    pub fn defect(&self) -> f64 {
        if self.rhs == 0.0 {
            0.0
        } else {
            ((self.rhs - self.lhs) / self.rhs).max(0.0)
        }
    }

    pub fn holds(&self) -> bool {
        self.defect() <= TRACE_TOL
    }
}

pub fn trace_condition_sides(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<TraceCondition> {
    same_dim(a, b)?;
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "the trace condition needs 1 < p < ∞, got {p}"
        )));
    }
    if a.is_zero() {
        return Err(Error::ZeroOperand("A"));
    }
    if b.is_zero() {
        return Err(Error::ZeroOperand("B"));
    }
    let norm = NormSpec::schatten(p)?;
    // A = W Σ V*: |A|^{p−1} U* = V Σ^{p−1} W*, so the trace is Σ s_k^{p−1} ⟨B v_k, w_k⟩
    let parts = spectral::svd(a);
    let mut tr = C64::new(0.0, 0.0);
    for k in 0..parts.rank() {
        let v = parts.right.column(k);
        let w = parts.left.column(k);
        let bv = b.matvec(&v);
        let ip: C64 = bv.iter().zip(&w).map(|(x, y)| x * y.conj()).sum();
        tr += ip * parts.singulars[k].powf(p - 1.0);
    }
    let sum_p: f64 = parts.singulars.iter().map(|s| s.powf(p)).sum();
    let na = norm.of_singulars(&parts.singulars);
    Ok(TraceCondition {
        lhs: na * tr.norm(),
        rhs: norm.eval(b) * sum_p,
    })
}

/// The trace-form parallelism criterion for `1 < p < ∞`.
pub fn parallel_trace_condition(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<bool> {
    Ok(trace_condition_sides(a, b, p)?.holds())
}

/// One evaluated condition: the normalized distance from equality and the
/// resulting decision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Condition {
    pub holds: bool,
    pub defect: f64,
}

impl Condition {
    fn with_tol(defect: f64, tol: f64) -> Self {
        Self {
            holds: defect <= tol,
            defect,
        }
    }
}

/// The trace-class conditions that each characterize `w_1(A) = ‖A‖_1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct W1Conditions {
    /// `w_1(A) = ‖A‖_1`.
    pub cond1: Condition,
    /// `A ∥^1 A*`.
    pub cond2: Condition,
    /// `(A*)² = λ|A||A*|` for some `|λ| = 1`.
    pub cond5: Condition,
    /// `|A + λA*| = |A| + |A*|` for some `|λ| = 1`.
    pub cond7: Condition,
    /// `|tr(|A|A⁻¹A*)| = ‖A*‖_1`; absent for singular `A`.
    pub cond10: Option<Condition>,
}

impl W1Conditions {
    pub fn all(&self) -> Vec<(&'static str, Condition)> {
        let mut v = vec![
            ("cond1", self.cond1),
            ("cond2", self.cond2),
            ("cond5", self.cond5),
            ("cond7", self.cond7),
        ];
        if let Some(c) = self.cond10 {
            v.push(("cond10", c));
        }
        v
    }
}

pub fn w1_parallel_conditions(a: &ComplexMatrix) -> Result<W1Conditions> {
    w1_parallel_conditions_with(a, &unimodular_search(), &MaxSearch::default())
}

/// [`w1_parallel_conditions`] with explicit grids for the unimodular
/// searches and for `w_1`.
pub fn w1_parallel_conditions_with(a: &ComplexMatrix, circle: &MaxSearch, radius: &MaxSearch) -> Result<W1Conditions> {
    if a.is_zero() {
        return Err(Error::ZeroOperand("A"));
    }
    let trace = NormSpec::trace();
    let adj = a.adjoint();
    let parts = spectral::svd(a);
    let norm1 = trace.of_singulars(&parts.singulars);

    let w1 = wn_max_with(a, &trace, radius).value;
    let cond1 = Condition::with_tol(((norm1 - w1) / norm1).max(0.0), DECISION_TOL);

    let par = parallel_witness_with(a, &adj, &trace, circle)?;
    let cond2 = Condition::with_tol(par.gap / (2.0 * norm1), DECISION_TOL);

    // min over |λ| = 1 of ‖P − λQ‖_F² is ‖P‖² + ‖Q‖² − 2|⟨P,Q⟩|
    let mod_a = spectral::modulus(a);
    let mod_adj = spectral::modulus(&adj);
    let p = adj.matmul(&adj);
    let q = mod_a.matmul(&mod_adj);
    let ip = hs_inner(&p, &q)?.norm();
    let d2 = (p.frobenius_sq() + q.frobenius_sq() - 2.0 * ip).max(0.0);
    let scale = a.frobenius_sq();
    let cond5 = Condition::with_tol(d2.sqrt() / scale, DECISION_TOL);

    let target = &mod_a + &mod_adj;
    let g = |phi: f64| -spectral::modulus(&a.add_scaled(unimodular(phi), &adj)).frobenius_dist(&target);
    let values: Vec<f64> = circle.nodes(2.0 * PI).map(g).collect();
    let best = refine_periodic_max(&values, 2.0 * PI, circle, g);
    let cond7 = Condition::with_tol(-best.value / a.frobenius(), DECISION_TOL);

    let smax = parts.singulars[0];
    let smin = *parts.singulars.last().expect("nonempty");
    let cond10 = if smin > 1e-10 * smax {
        // |A|A⁻¹ = V W* for A = W Σ V*
        let vw = parts.right.matmul(&parts.left.adjoint());
        let tr = vw.matmul(&adj).trace().norm();
        Some(Condition::with_tol((tr - norm1).abs() / norm1, DECISION_TOL))
    } else {
        None
    };

    Ok(W1Conditions {
        cond1,
        cond2,
        cond5,
        cond7,
        cond10,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmat::{basis, ginibre, hermitian, rank_one, SeedTree};

    fn sch(p: f64) -> NormSpec {
        NormSpec::schatten(p).unwrap()
    }

    fn jordan() -> ComplexMatrix {
        ComplexMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]])
    }

    #[test]
    fn projection_is_trace_parallel_to_identity() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let i = ComplexMatrix::identity(2);
        let w = parallel_witness(&a, &i, &NormSpec::trace()).unwrap();
        assert!(w.is_parallel && w.gap.abs() < 1e-12);
        assert!((w.lambda - C64::new(1.0, 0.0)).norm() < 1e-9);
        assert!(parallel_witness(&a, &i, &NormSpec::operator()).unwrap().is_parallel);
        assert!(!linear_dependence(&a, &i).unwrap());
    }

    #[test]
    fn projection_is_not_hs_parallel_to_identity() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let i = ComplexMatrix::identity(2);
        let w = parallel_witness(&a, &i, &NormSpec::hilbert_schmidt()).unwrap();
        assert!(!w.is_parallel);
        // independent φ-grid oracle: max |1 + e^{iφ}|² + 1 = 5 < (1 + √2)²
        let best = (0..20000)
            .map(|k| {
                let phi = 2.0 * PI * k as f64 / 20000.0;
                ((1.0 + phi.cos()).powi(2) + phi.sin().powi(2) + 1.0).sqrt()
            })
            .fold(0.0, f64::max);
        assert!((1.0 + 2f64.sqrt() - best - w.gap).abs() < 1e-6);
        for p in [1.5, 3.0] {
            assert!(!parallel_witness(&a, &i, &sch(p)).unwrap().is_parallel);
        }
    }

    #[test]
    fn dependent_pair_is_parallel_for_every_norm() {
        let mut rng = SeedTree::new(51).rng();
        let a = ginibre(3, &mut rng);
        let b = a.scale(C64::new(0.0, 2.0));
        for norm in [NormSpec::operator(), sch(1.0), sch(1.5), sch(2.0), sch(4.0)] {
            let w = parallel_witness(&a, &b, &norm).unwrap();
            assert!(w.is_parallel, "{norm}: gap {}", w.gap);
            assert!((w.lambda - C64::new(0.0, -1.0)).norm() < 1e-5);
        }
    }

    #[test]
    fn zero_operands_are_rejected() {
        let z = ComplexMatrix::zeros(2);
        let i = ComplexMatrix::identity(2);
        assert!(matches!(
            parallel_witness(&z, &i, &sch(2.0)),
            Err(Error::ZeroOperand(_))
        ));
        assert!(matches!(bj_orthogonal(&i, &z, &sch(2.0)), Err(Error::ZeroOperand(_))));
        assert!(matches!(wn_orthogonal(&i, &z, &sch(2.0)), Err(Error::ZeroOperand(_))));
        assert!(matches!(
            parallel_witness(&i, &ComplexMatrix::identity(3), &sch(2.0)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn dependence_examples() {
        let mut rng = SeedTree::new(52).rng();
        let a = ginibre(4, &mut rng);
        assert!(linear_dependence(&a, &a.scale_real(3.0)).unwrap());
        let e1 = basis(2, 0);
        let e2 = basis(2, 1);
        let t = rank_one(&e1, &e2).unwrap();
        let s = rank_one(&e2, &e1).unwrap();
        assert!(!linear_dependence(&t, &s).unwrap());
        assert!((dependence_ratio(&t, &s).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identity_orthogonal_to_traceless_square() {
        // A = diag(1, i): A² = diag(1, −1) has trace zero
        let a = ComplexMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        let a2 = a.matmul(&a);
        let i = ComplexMatrix::identity(2);
        for norm in [sch(1.0), sch(1.5), sch(2.0), sch(3.0)] {
            let w = bj_orthogonal(&i, &a2, &norm).unwrap();
            assert!(w.is_orthogonal, "{norm}: {w:?}");
        }
        // brute-force γ grid for p = 2
        let hs = NormSpec::hilbert_schmidt();
        let mut grid_min = f64::INFINITY;
        for re in -30..=30 {
            for im in -30..=30 {
                let g = C64::new(re as f64 * 0.05, im as f64 * 0.05);
                grid_min = grid_min.min(hs.eval(&i.add_scaled(g, &a2)));
            }
        }
        assert!(grid_min >= hs.eval(&i) - 1e-12);
    }

    #[test]
    fn orthogonality_examples() {
        let i = ComplexMatrix::identity(2);
        let w = bj_orthogonal(&i, &i, &sch(1.5)).unwrap();
        assert!(!w.is_orthogonal);
        assert!(w.min_value < 1e-8);
        assert!((w.gamma_min + 1.0).norm() < 1e-6);
        let e11 = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let e22 = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        assert!(bj_orthogonal(&e11, &e22, &sch(2.0)).unwrap().is_orthogonal);
        assert!(bj_orthogonal(&e11, &e22, &NormSpec::operator()).unwrap().is_orthogonal);
    }

    #[test]
    fn orthogonality_is_homogeneous() {
        let mut rng = SeedTree::new(53).rng();
        for norm in [NormSpec::operator(), sch(1.0), sch(3.0)] {
            let x = ginibre(3, &mut rng);
            let y = ginibre(3, &mut rng);
            let base = bj_orthogonal(&x, &y, &norm).unwrap().is_orthogonal;
            let scaled = bj_orthogonal(&x.scale(C64::new(-2.0, 1.0)), &y.scale(C64::new(0.0, 0.3)), &norm)
                .unwrap()
                .is_orthogonal;
            assert_eq!(base, scaled);
        }
    }

    #[test]
    fn wn_orthogonality_examples() {
        let mut rng = SeedTree::new(54).rng();
        let t = hermitian(2, &mut rng);
        let cfg = MaxSearch::with_grid(128);
        let w = wn_orthogonal_with(&t, &t, &NormSpec::operator(), &cfg, 1e-8).unwrap();
        assert!(!w.is_orthogonal);
        // Jordan block: w(T) = ½‖T‖, so T ⊥ A in operator norm forces T ⊥_w A.
        // The top right singular vector of T is e2 with T e2 = e1; any A with
        // ⟨A e2, e1⟩ = 0 is operator-orthogonal to T.
        let t = jordan();
        let a = ComplexMatrix::from_pairs(&[&[(0.3, -0.2), (0.0, 0.0)], &[(1.0, 0.5), (-0.7, 0.1)]]);
        assert!(bj_orthogonal(&t, &a, &NormSpec::operator()).unwrap().is_orthogonal);
        assert!(
            wn_orthogonal_with(&t, &a, &NormSpec::operator(), &cfg, 1e-8)
                .unwrap()
                .is_orthogonal
        );
    }

    #[test]
    fn trace_condition_examples() {
        let mut rng = SeedTree::new(55).rng();
        let a = ginibre(3, &mut rng);
        assert!(parallel_trace_condition(&a, &a.scale(C64::new(-1.5, 0.5)), 3.0).unwrap());
        let d = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let i = ComplexMatrix::identity(2);
        let sides = trace_condition_sides(&d, &i, 2.0).unwrap();
        assert!((sides.lhs - 1.0).abs() < 1e-14 && (sides.rhs - 2f64.sqrt()).abs() < 1e-14);
        assert!(!parallel_trace_condition(&d, &i, 2.0).unwrap());
        let h = hermitian(4, &mut rng);
        let a = h.scale(C64::from_polar(1.0, 0.7));
        assert!(parallel_trace_condition(&a, &a.adjoint(), 1.5).unwrap());
        assert!(matches!(
            parallel_trace_condition(&a, &a, 1.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn w1_conditions_on_rank_one_and_hermitian() {
        let t = rank_one(&basis(2, 0), &basis(2, 1)).unwrap();
        let c = w1_parallel_conditions(&t).unwrap();
        assert!(c.cond5.holds && c.cond1.holds && c.cond2.holds && c.cond7.holds);
        assert!(c.cond10.is_none());
        let mut rng = SeedTree::new(56).rng();
        let h = hermitian(3, &mut rng);
        let c = w1_parallel_conditions(&h).unwrap();
        assert!(c.all().iter().all(|(_, c)| c.holds), "{c:?}");
        assert!(c.cond10.is_some());
    }

    #[test]
    fn w1_conditions_fail_for_diag_1_i() {
        let a = ComplexMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        let w1 = crate::radius::wn_max(&a, &NormSpec::trace()).value;
        assert!((w1 - 2f64.sqrt()).abs() < 1e-12);
        let c = w1_parallel_conditions(&a).unwrap();
        assert!(c.all().iter().all(|(_, c)| !c.holds), "{c:?}");
    }
}
