//! Hermitian eigendecomposition, SVD, modulus, PSD roots, polar
//! decomposition and the Aluthge transform.

mod eig;
mod polar;
mod svd;

pub use eig::{eigenvalues_hermitian, hermitian_eig, hermitian_eigenvalues, HermEig};
pub use polar::{aluthge, modulus, modulus_power, polar, psd_power, psd_sqrt, PolarParts};
pub use svd::{singular_values, svd, SvdParts};
