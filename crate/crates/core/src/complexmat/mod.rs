//! Dense complex matrices, the Cartesian decomposition, JSON I/O and seeded
//! structural ensembles.

mod ensemble;
mod json;
mod matrix;
mod rng;

pub(crate) use ensemble::orthonormalize;
pub use ensemble::{
    ginibre, hermitian, nilpotent, normal, psd, sample, square_zero, unitary, EnsembleKind, EnsembleSpec, Sample,
};
pub use matrix::{basis, hs_inner, inner, rank_one, vec_norm, ComplexMatrix, C64};
pub use rng::{SeedTree, TrialRng};
