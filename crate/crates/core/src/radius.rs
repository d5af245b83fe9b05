//! Generalized numerical radius `w_N(A) = sup_θ N(Re(e^{iθ}A))`, its
//! closed form for the Hilbert–Schmidt norm, the standard two-sided bounds,
//! and the distance from `A` to the scalar matrices.
//!
//! Writing `A = H + iK`, `Re(e^{iθ}A) = cos θ·H − sin θ·K`, so `w_N` is the
//! maximum of a `π`-periodic function of one variable. That function is
//! Lipschitz with constant `N(H) + N(K)`, which turns a uniform grid into a
//! certified enclosure of the supremum.

use std::f64::consts::PI;

use crate::complexmat::{ComplexMatrix, C64};
use crate::norms::NormSpec;
use crate::optim::{minimize_convex_2d, refine_periodic_max};
use crate::spectral;

pub use crate::optim::MaxSearch;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaximizerResult {
    pub value: f64,
    /// In `[0, π)`.
    pub argmax_theta: f64,
    /// `value ≤ sup ≤ value + bracket`.
    pub bracket: f64,
}

impl MaximizerResult {
    pub fn upper(&self) -> f64 {
        self.value + self.bracket
    }
}

/// Eigenvalues of the Hermitian pencil `cos θ·X + sin θ·Y` on a uniform
/// grid over `[0, π)`, cached so that every unitarily invariant norm can be
/// maximized from one set of eigen-solves.
#[derive(Clone, Debug)]
pub struct RadiusProfile {
    x: ComplexMatrix,
    y: ComplexMatrix,
    cfg: MaxSearch,
    grid_eigs: Vec<Vec<f64>>,
}

impl RadiusProfile {
    /// Profile of `θ ↦ Re(e^{iθ}A)`.
    pub fn new(a: &ComplexMatrix, cfg: MaxSearch) -> Self {
        let (h, k) = a.cartesian_parts();
        Self::pencil(h, -&k, cfg)
    }

    /// Profile of `θ ↦ cos θ·X + sin θ·Y` for Hermitian `X`, `Y`.
    pub fn pencil(x: ComplexMatrix, y: ComplexMatrix, cfg: MaxSearch) -> Self {
        let grid_eigs = cfg
            .nodes(PI)
            .map(|t| spectral::eigenvalues_hermitian(&x.lin_comb(t.cos(), t.sin(), &y)))
            .collect();
        Self { x, y, cfg, grid_eigs }
    }

    pub fn member(&self, theta: f64) -> ComplexMatrix {
        self.x.lin_comb(theta.cos(), theta.sin(), &self.y)
    }

    pub fn eval(&self, norm: &NormSpec, theta: f64) -> f64 {
        norm.eval_hermitian(&self.member(theta))
    }

    /// `sup_θ N(cos θ·X + sin θ·Y)`.
    pub fn sup(&self, norm: &NormSpec) -> MaximizerResult {
        let lipschitz = norm.eval_hermitian(&self.x) + norm.eval_hermitian(&self.y);
        if lipschitz == 0.0 {
            return MaximizerResult {
                value: 0.0,
                argmax_theta: 0.0,
                bracket: 0.0,
            };
        }
        let values: Vec<f64> = self.grid_eigs.iter().map(|e| norm.of_singulars(e)).collect();
        let best = refine_periodic_max(&values, PI, &self.cfg, |t| self.eval(norm, t));
        let h = self.cfg.step(PI);
        MaximizerResult {
            value: best.value,
            argmax_theta: best.arg,
            bracket: (best.grid_max + 0.5 * lipschitz * h - best.value).max(0.0),
        }
    }
}

/// `w_N(A)` with the default search parameters.
pub fn wn_max(a: &ComplexMatrix, norm: &NormSpec) -> MaximizerResult {
    wn_max_with(a, norm, &MaxSearch::default())
}

pub fn wn_max_with(a: &ComplexMatrix, norm: &NormSpec, cfg: &MaxSearch) -> MaximizerResult {
    RadiusProfile::new(a, *cfg).sup(norm)
}

/// Classical numerical radius `w(A)`, the operator-norm case.
pub fn numerical_radius(a: &ComplexMatrix) -> MaximizerResult {
    wn_max(a, &NormSpec::operator())
}

/// `w_2(A) = √((‖A‖₂² + |tr A²|)/2)`.
pub fn w2_closed(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut tr_sq = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr_sq += a[(i, j)] * a[(j, i)];
        }
    }
    (0.5 * (a.frobenius_sq() + tr_sq.norm())).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

/// Norm-dependent bracket `lower ≤ w_N(A) ≤ upper`.
pub fn wn_bounds(a: &ComplexMatrix, norm: &NormSpec) -> Bounds {
    let upper = norm.eval(a);
    let p = norm.p();
    let lower = if norm.is_operator() {
        0.5 * upper
    } else if p < 2.0 {
        2f64.powf(-1.0 / p) * upper
    } else if p == 2.0 {
        let tr_sq = a.matmul(a).trace().norm();
        (upper / 2f64.sqrt()).max(0.5 * (upper + tr_sq.sqrt()))
    } else {
        2f64.powf(1.0 / p - 1.0) * upper
    };
    Bounds { lower, upper }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarDistance {
    /// `D_{N,A} = inf_λ N(A − λI)`.
    pub distance: f64,
    /// A minimizing `λ`.
    pub center: C64,
}

/// `D_{N,A}` and a minimizer. With `c₀ = tr(A)/n`, every `λ` with
/// `|λ − c₀| > N(A − c₀I)` is worse than `c₀` itself (`c₀` lies in the
/// numerical range and `N` dominates the operator norm), so the search box
/// is centred at `c₀` with that half-width.
pub fn scalar_distance(a: &ComplexMatrix, norm: &NormSpec) -> ScalarDistance {
    let n = a.dim() as f64;
    let c0 = a.trace() / n;
    let d0 = norm.eval(&a.shift(c0));
    if norm.is_schatten(2.0) || d0 == 0.0 {
        return ScalarDistance {
            distance: d0,
            center: c0,
        };
    }
    let (center, distance) = minimize_convex_2d(|l| norm.eval(&a.shift(l)), c0, d0, 1e-11);
    ScalarDistance { distance, center }
}
