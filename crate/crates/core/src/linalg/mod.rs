//! Dense complex linear algebra: products, Kronecker products, Hermitian
//! eigendecomposition, SVD, spectral matrix functions.

mod eigen;
mod matrix;
mod svd;

use std::sync::OnceLock;

use crate::error::{QuditError, Result};

pub use eigen::{
    eigvalsh, hermitian_eig, mat_func, mat_func_complex, psd_sqrt, EigDecomp, HERMITIAN_TOL,
    MAX_SWEEPS, OFF_DIAGONAL_TOL,
};
pub use matrix::{
    anticommutator, char_coeffs_from_eigs, commutator, kron, kron_all, kron_vec, Matrix, C64,
};
pub use svd::{svd, Svd};

/// Default cap on any composite dimension (12 qubits).
pub const DEFAULT_MAX_DIMENSION: usize = 4096;

/// Environment variable overriding [`DEFAULT_MAX_DIMENSION`].
pub const MAX_DIMENSION_ENV: &str = "QUDIT_MAX_DIM";

/// The dimension cap, read once from `QUDIT_MAX_DIM` when set to a positive
/// integer, else [`DEFAULT_MAX_DIMENSION`].
pub fn max_dimension() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_DIMENSION_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_DIMENSION)
    })
}

pub(crate) fn check_dimension(dim: usize) -> Result<()> {
    let cap = max_dimension();
    if dim > cap {
        return Err(QuditError::Dimension(format!(
            "dimension {dim} exceeds the configured maximum {cap}"
        )));
    }
    Ok(())
}
