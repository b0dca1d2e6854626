//! Qutrit coherence vector, star product and characteristic coefficients.
//!
//! The coherence vector is `r_j = (√3/2) tr(ρ λ_j)` in Gell-Mann numbering,
//! so that `ρ = (I + √3 r·λ)/3` and pure states have `|r| = 1`.

use std::sync::OnceLock;

use super::{DensityOp, DimSpec};
use crate::error::{QuditError, Result};
use crate::generators::{gell_mann, structure_constants, Tensor3};
use crate::linalg::{eigvalsh, Matrix};

/// Tolerance of the `B3 = det ρ` cross-check.
pub const DET_CHECK_TOL: f64 = 1e-10;

fn lambdas() -> &'static [Matrix] {
    static L: OnceLock<Vec<Matrix>> = OnceLock::new();
    L.get_or_init(gell_mann)
}

fn d_tensor() -> &'static Tensor3 {
    static D: OnceLock<Tensor3> = OnceLock::new();
    D.get_or_init(|| structure_constants(3).expect("d = 3").g)
}

fn check_qutrit(rho: &DensityOp) -> Result<()> {
    if rho.dims().dims() != [3] {
        return Err(QuditError::Dimension(format!(
            "expected a qutrit, got dims {}",
            rho.dims()
        )));
    }
    Ok(())
}

/// `r_j = (√3/2) tr(ρ λ_j)` for `j = 1..8`.
pub fn qutrit_coherence_vector(rho: &DensityOp) -> Result<[f64; 8]> {
    check_qutrit(rho)?;
    let c = 3f64.sqrt() / 2.0;
    let mut r = [0.0; 8];
    for (j, l) in lambdas().iter().enumerate() {
        r[j] = c * rho.matrix().trace_product(l)?.re;
    }
    Ok(r)
}

/// `ρ = (I + √3 r·λ)/3`, validated for positivity.
pub fn dm_from_qutrit_vector(r: &[f64; 8]) -> Result<DensityOp> {
    let s3 = 3f64.sqrt();
    let mut m = Matrix::identity(3);
    for (j, l) in lambdas().iter().enumerate() {
        m = &m + &l.scale_real(s3 * r[j]);
    }
    let m = m.scale_real(1.0 / 3.0);
    let min = eigvalsh(&m)?[0];
    if min < -super::BLOCH_POSITIVITY_TOL {
        return Err(QuditError::Positivity(format!(
            "coherence vector lies outside the state space (minimum eigenvalue {min:e})"
        )));
    }
    Ok(DensityOp::from_trusted(m, DimSpec::single(3)?))
}

/// `(r∗r)_k = √3 Σ_{ij} d_ijk r_i r_j`.
pub fn star_product(r: &[f64; 8]) -> [f64; 8] {
    let d = d_tensor();
    let s3 = 3f64.sqrt();
    let mut out = [0.0; 8];
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                acc += d.get(i, j, k) * r[i] * r[j];
            }
        }
        *o = s3 * acc;
    }
    out
}

/// Characteristic-polynomial coefficients of a qutrit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritCoeffs {
    /// `tr ρ`.
    pub b1: f64,
    /// `(1 − tr ρ²)/2`.
    pub b2: f64,
    /// `(1 − 3 r·r + 2 (r∗r)·r)/27`.
    pub b3: f64,
    /// `det ρ`, the independent value `b3` is checked against.
    pub det: f64,
}

impl QutritCoeffs {
    /// All three coefficients are nonnegative within `tol`.
    pub fn is_positive(&self, tol: f64) -> bool {
        self.b1 >= -tol && self.b2 >= -tol && self.b3 >= -tol
    }
}

/// Computes `(B1, B2, B3)`; fails numerically if `B3` and `det ρ` disagree
/// by more than [`DET_CHECK_TOL`].
pub fn qutrit_char_coeffs(rho: &DensityOp) -> Result<QutritCoeffs> {
    let r = qutrit_coherence_vector(rho)?;
    let m = rho.matrix();
    let b1 = m.trace()?.re;
    let b2 = (1.0 - rho.purity()) / 2.0;
    let rr: f64 = r.iter().map(|x| x * x).sum();
    let star = star_product(&r);
    let srr: f64 = star.iter().zip(&r).map(|(a, b)| a * b).sum();
    let b3 = (1.0 - 3.0 * rr + 2.0 * srr) / 27.0;
    let det = m.determinant()?.re;
    if (b3 - det).abs() > DET_CHECK_TOL {
        return Err(QuditError::Numerical(format!(
            "B3 = {b3:e} disagrees with det = {det:e}"
        )));
    }
    Ok(QutritCoeffs { b1, b2, b3, det })
}
