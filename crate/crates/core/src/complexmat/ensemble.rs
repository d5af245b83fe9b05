//! Seeded structural ensembles.
//!
//! Every kind has a defining predicate ([`EnsembleKind::check`]) that holds
//! by construction; the predicate is what checks rely on when they require,
//! say, an accretive operand.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C64, I};
use super::rng::{SeedTree, TrialRng};
use crate::error::{Error, Result};
use crate::spectral;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    Ginibre,
    Hermitian,
    Psd,
    Normal,
    /// Strictly upper triangular, hence `A^n = 0`.
    Nilpotent,
    /// Block form `[[0, R], [0, 0]]`, so `A² = 0` exactly.
    SquareZero,
    RankOne,
    Accretive,
    AccretiveDissipative,
    /// Pair `(A, B)` with `A` invertible and `AB` Hermitian.
    SelfadjointProductPair,
    /// Pair `(A, X)` with `AX = XA*` or `AX = −XA*`.
    CommutingStarPair,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 11] = [
        Self::Ginibre,
        Self::Hermitian,
        Self::Psd,
        Self::Normal,
        Self::Nilpotent,
        Self::SquareZero,
        Self::RankOne,
        Self::Accretive,
        Self::AccretiveDissipative,
        Self::SelfadjointProductPair,
        Self::CommutingStarPair,
    ];

    /// Kinds that produce a single matrix.
    pub const SINGLES: [EnsembleKind; 9] = [
        Self::Ginibre,
        Self::Hermitian,
        Self::Psd,
        Self::Normal,
        Self::Nilpotent,
        Self::SquareZero,
        Self::RankOne,
        Self::Accretive,
        Self::AccretiveDissipative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ginibre => "ginibre",
            Self::Hermitian => "hermitian",
            Self::Psd => "psd",
            Self::Normal => "normal",
            Self::Nilpotent => "nilpotent",
            Self::SquareZero => "square_zero",
            Self::RankOne => "rank_one",
            Self::Accretive => "accretive",
            Self::AccretiveDissipative => "accretive_dissipative",
            Self::SelfadjointProductPair => "selfadjoint_product_pair",
            Self::CommutingStarPair => "commuting_star_pair",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(self, Self::SelfadjointProductPair | Self::CommutingStarPair)
    }

    /// Draws one sample from the stream.
    pub fn draw(self, dim: usize, rng: &mut TrialRng) -> Sample {
        assert!(dim >= 1, "ensemble dimension must be positive");
        match self {
            Self::Ginibre => Sample::Single(ginibre(dim, rng)),
            Self::Hermitian => Sample::Single(hermitian(dim, rng)),
            Self::Psd => Sample::Single(psd(dim, rng)),
            Self::Normal => Sample::Single(normal(dim, rng)),
            Self::Nilpotent => Sample::Single(nilpotent(dim, rng)),
            Self::SquareZero => Sample::Single(square_zero(dim, rng)),
            Self::RankOne => {
                let s = 1.0 / (dim as f64).sqrt();
                let x: Vec<C64> = rng.gaussian_vector(dim).iter().map(|z| z * s).collect();
                let y = rng.gaussian_vector(dim);
                Sample::Single(super::matrix::rank_one(&x, &y).expect("equal lengths"))
            }
            Self::Accretive => {
                let p = psd(dim, rng);
                let k = hermitian(dim, rng);
                Sample::Single(p.add_scaled(I, &k))
            }
            Self::AccretiveDissipative => {
                let p = psd(dim, rng);
                let q = psd(dim, rng);
                Sample::Single(p.add_scaled(I, &q))
            }
            Self::SelfadjointProductPair => {
                let (a, b) = selfadjoint_product_pair(dim, rng);
                Sample::Pair(a, b)
            }
            Self::CommutingStarPair => {
                let (a, x) = commuting_star_pair(dim, rng);
                Sample::Pair(a, x)
            }
        }
    }

    /// The defining structural predicate, at the crate's equality tolerance.
    pub fn check(self, sample: &Sample) -> bool {
        const TOL: f64 = 1e-12;
        match (self, sample) {
            (Self::Ginibre, Sample::Single(_)) => true,
            (Self::Hermitian, Sample::Single(a)) => a.hermitian_defect() <= TOL * a.frobenius(),
            (Self::Psd, Sample::Single(a)) => {
                a.hermitian_defect() <= TOL * a.frobenius() && min_eig(a) >= -TOL * a.frobenius()
            }
            (Self::Normal, Sample::Single(a)) => {
                let ad = a.adjoint();
                let comm = a.matmul(&ad) - ad.matmul(a);
                comm.frobenius() <= TOL * a.frobenius_sq().max(f64::MIN_POSITIVE)
            }
            (Self::Nilpotent, Sample::Single(a)) => {
                (0..a.dim()).all(|i| (0..=i).all(|j| a[(i, j)] == C64::new(0.0, 0.0)))
            }
            (Self::SquareZero, Sample::Single(a)) => a.matmul(a).frobenius() <= TOL * a.frobenius_sq(),
            (Self::RankOne, Sample::Single(a)) => {
                let s = spectral::singular_values(a);
                s.iter().skip(1).all(|&x| x <= 1e-10 * s[0])
            }
            (Self::Accretive, Sample::Single(a)) => min_eig(&a.re_part()) >= -TOL * a.frobenius(),
            (Self::AccretiveDissipative, Sample::Single(a)) => {
                min_eig(&a.re_part()) >= -TOL * a.frobenius() && min_eig(&a.im_part()) >= -TOL * a.frobenius()
            }
            (Self::SelfadjointProductPair, Sample::Pair(a, b)) => {
                let ab = a.matmul(b);
                let invertible = {
                    let s = spectral::singular_values(a);
                    s[s.len() - 1] > 1e-10 * s[0]
                };
                invertible && ab.hermitian_defect() <= TOL * a.frobenius() * b.frobenius()
            }
            (Self::CommutingStarPair, Sample::Pair(a, x)) => {
                let ax = a.matmul(x);
                let xa = x.matmul(&a.adjoint());
                let scale = TOL * a.frobenius() * x.frobenius();
                (&ax - &xa).frobenius() <= scale || (&ax + &xa).frobenius() <= scale
            }
            _ => false,
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownEnsemble(s.to_string()))
    }
}

/// `kind:dim:seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub seed: u64,
}

impl FromStr for EnsembleSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::EnsembleSpec(s.to_string()));
        }
        let kind = parts[0].parse()?;
        let dim: usize = parts[1].parse().map_err(|_| Error::EnsembleSpec(s.to_string()))?;
        let seed: u64 = parts[2].parse().map_err(|_| Error::EnsembleSpec(s.to_string()))?;
        if dim == 0 {
            return Err(Error::EnsembleSpec(s.to_string()));
        }
        Ok(Self { kind, dim, seed })
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.kind, self.dim, self.seed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sample {
    Single(ComplexMatrix),
    Pair(ComplexMatrix, ComplexMatrix),
}

impl Sample {
    pub fn single(self) -> Option<ComplexMatrix> {
        match self {
            Sample::Single(a) => Some(a),
            Sample::Pair(..) => None,
        }
    }

    pub fn pair(self) -> Option<(ComplexMatrix, ComplexMatrix)> {
        match self {
            Sample::Pair(a, b) => Some((a, b)),
            Sample::Single(_) => None,
        }
    }

    pub fn matrices(&self) -> Vec<&ComplexMatrix> {
        match self {
            Sample::Single(a) => vec![a],
            Sample::Pair(a, b) => vec![a, b],
        }
    }
}

/// Deterministic sample for `spec`.
pub fn sample(spec: &EnsembleSpec) -> Result<Sample> {
    if spec.dim == 0 {
        return Err(Error::EnsembleSpec(spec.to_string()));
    }
    let mut rng = SeedTree::new(spec.seed).child(spec.kind.name()).rng();
    Ok(spec.kind.draw(spec.dim, &mut rng))
}

fn min_eig(h: &ComplexMatrix) -> f64 {
    spectral::eigenvalues_hermitian(h).last().copied().unwrap_or(0.0)
}

/// I.i.d. standard complex Gaussian entries scaled by `1/√n`.
pub fn ginibre(dim: usize, rng: &mut TrialRng) -> ComplexMatrix {
    let s = 1.0 / (dim as f64).sqrt();
    ComplexMatrix::from_fn(dim, |_, _| rng.complex_gaussian() * s)
}

/// `(G + G*)/2`; exactly Hermitian in floating point.
pub fn hermitian(dim: usize, rng: &mut TrialRng) -> ComplexMatrix {
    ginibre(dim, rng).re_part()
}

pub fn psd(dim: usize, rng: &mut TrialRng) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    g.matmul(&g.adjoint()).re_part()
}

/// Haar unitary: Gram–Schmidt on a Ginibre sample with positive `R` diagonal.
pub fn unitary(dim: usize, rng: &mut TrialRng) -> ComplexMatrix {
    loop {
        let g = ginibre(dim, rng);
        let cols: Vec<Vec<C64>> = (0..dim).map(|j| g.column(j)).collect();
        if let Some(q) = orthonormalize(cols) {
            return ComplexMatrix::from_columns(&q);
        }
    }
}

/// Modified Gram–Schmidt with one re-orthogonalization pass. `None` if the
/// columns are numerically dependent.
pub(crate) fn orthonormalize(mut cols: Vec<Vec<C64>>) -> Option<Vec<Vec<C64>>> {
    use super::matrix::{inner, vec_norm};
    for j in 0..cols.len() {
        for _ in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let r = inner(&rest[0], &done[k]);
                for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= r * q;
                }
            }
        }
        let norm = vec_norm(&cols[j]);
        if norm < 1e-10 {
            return None;
        }
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    Some(cols)
}

pub fn normal(dim: usize, rng: &mut TrialRng) -> ComplexMatrix {
    let u = unitary(dim, rng);
    let d: Vec<C64> = (0..dim).map(|_| rng.complex_gaussian()).collect();
    ComplexMatrix::from_diag(&d).conjugate_by(&u)
}

pub fn nilpotent(dim: usize, rng: &mut TrialRng) -> ComplexMatrix {
    let s = 1.0 / (dim as f64).sqrt();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in i + 1..dim {
            m[(i, j)] = rng.complex_gaussian() * s;
        }
    }
    m
}

/// `[[0, R], [0, 0]]` with the top block of size `⌊n/2⌋`.
pub fn square_zero(dim: usize, rng: &mut TrialRng) -> ComplexMatrix {
    let m = dim / 2;
    let s = 1.0 / (dim as f64).sqrt();
    let mut a = ComplexMatrix::zeros(dim);
    for i in 0..m {
        for j in m..dim {
            a[(i, j)] = rng.complex_gaussian() * s;
        }
    }
    a
}

/// `A = W₁ diag(σ) W₂` with `σ ∈ [½, 2]`, `B = A⁻¹ H` for Hermitian `H`.
fn selfadjoint_product_pair(dim: usize, rng: &mut TrialRng) -> (ComplexMatrix, ComplexMatrix) {
    let w1 = unitary(dim, rng);
    let w2 = unitary(dim, rng);
    let sigma: Vec<f64> = (0..dim).map(|_| rng.uniform_in(0.5, 2.0)).collect();
    let inv: Vec<f64> = sigma.iter().map(|s| 1.0 / s).collect();
    let h = hermitian(dim, rng);
    let a = w1.matmul(&ComplexMatrix::from_real_diag(&sigma)).matmul(&w2);
    let a_inv = w2
        .adjoint()
        .matmul(&ComplexMatrix::from_real_diag(&inv))
        .matmul(&w1.adjoint());
    (a, a_inv.matmul(&h))
}

/// `A = D + a·E₂₁` (real diagonal `D`), `X = diag(0, x₂, …, x_n)`, so that
/// `AX = DX = XD = XA*`; multiplying `A` by `i` flips the sign. Both are
/// then conjugated by one Haar unitary. With `D = I`, `a = 1` this is the
/// classical 3×3 example separating the condition from double commutation.
fn commuting_star_pair(dim: usize, rng: &mut TrialRng) -> (ComplexMatrix, ComplexMatrix) {
    let flip = rng.coin();
    let mut a = ComplexMatrix::from_real_diag(&(0..dim).map(|_| rng.gaussian()).collect::<Vec<_>>());
    let mut x_diag: Vec<C64> = (0..dim).map(|_| rng.complex_gaussian()).collect();
    if dim >= 2 {
        a[(1, 0)] = rng.complex_gaussian();
        x_diag[0] = C64::new(0.0, 0.0);
    }
    if flip {
        a = a.scale(I);
    }
    let x = ComplexMatrix::from_diag(&x_diag);
    let u = unitary(dim, rng);
    (a.conjugate_by(&u), x.conjugate_by(&u))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_kind_satisfies_its_predicate() {
        for kind in EnsembleKind::ALL {
            for dim in [1, 2, 3, 5, 8] {
                for seed in 0..40 {
                    let spec = EnsembleSpec { kind, dim, seed };
                    let s = sample(&spec).unwrap();
                    assert!(kind.check(&s), "{spec} violates its predicate: {s:?}");
                }
            }
        }
    }

    #[test]
    fn hermitian_sample_is_exactly_hermitian() {
        let s = sample(&"hermitian:4:42".parse().unwrap()).unwrap().single().unwrap();
        assert_eq!(s.hermitian_defect(), 0.0);
    }

    #[test]
    fn product_pair_is_selfadjoint() {
        let (a, b) = sample(&"selfadjoint_product_pair:3:7".parse().unwrap())
            .unwrap()
            .pair()
            .unwrap();
        assert!(a.matmul(&b).hermitian_defect() <= 1e-12);
    }

    #[test]
    fn sampling_is_deterministic() {
        for kind in EnsembleKind::ALL {
            let spec = EnsembleSpec { kind, dim: 4, seed: 99 };
            assert_eq!(sample(&spec).unwrap(), sample(&spec).unwrap());
        }
        let a = sample(&"ginibre:4:1".parse().unwrap()).unwrap();
        let b = sample(&"ginibre:4:2".parse().unwrap()).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn spec_parsing() {
        let s: EnsembleSpec = "accretive_dissipative:6:123".parse().unwrap();
        assert_eq!(s.kind, EnsembleKind::AccretiveDissipative);
        assert_eq!((s.dim, s.seed), (6, 123));
        assert_eq!(s.to_string(), "accretive_dissipative:6:123");
        assert!(matches!(
            "bogus:2:1".parse::<EnsembleSpec>(),
            Err(Error::UnknownEnsemble(_))
        ));
        assert!(matches!(
            "ginibre:0:1".parse::<EnsembleSpec>(),
            Err(Error::EnsembleSpec(_))
        ));
        assert!(matches!(
            "ginibre:2".parse::<EnsembleSpec>(),
            Err(Error::EnsembleSpec(_))
        ));
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = SeedTree::new(3).rng();
        for n in 1..9 {
            let u = unitary(n, &mut rng);
            let err = u.adjoint().matmul(&u).frobenius_dist(&ComplexMatrix::identity(n));
            assert!(err < 1e-13, "n={n}: {err}");
        }
    }

    #[test]
    fn commuting_pair_reproduces_three_by_three_family() {
        let a = ComplexMatrix::from_real(&[&[1.0, 0.0, 0.0], &[1.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let x = ComplexMatrix::from_real_diag(&[0.0, 2.5, -1.5]);
        assert_eq!(a.matmul(&x), x.matmul(&a.adjoint()));
        assert_ne!(a.matmul(&x), x.matmul(&a));
        assert!(EnsembleKind::CommutingStarPair.check(&Sample::Pair(a, x)));
    }
}
