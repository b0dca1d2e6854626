use super::{DimSpec, Ket};
use crate::error::{QuditError, Result};
use crate::linalg::{eigvalsh, Matrix, C64};

/// Trace tolerance used by [`validate_density`].
pub const TRACE_TOL: f64 = 1e-8;
/// Most negative eigenvalue accepted by [`validate_density`].
pub const POSITIVITY_TOL: f64 = 1e-8;
/// Largest `|ρ − ρ†|` entry accepted by [`validate_density`].
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Purity at or above `1 − PURE_TOL` counts as pure.
pub const PURE_TOL: f64 = 1e-9;

/// Density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOp {
    dims: DimSpec,
    matrix: Matrix,
}

impl DensityOp {
    /// Wraps a matrix known to be a state (products, reductions and unitary
    /// images of states).
    pub(crate) fn from_trusted(matrix: Matrix, dims: DimSpec) -> Self {
        debug_assert_eq!(matrix.rows(), dims.total());
        DensityOp { dims, matrix }
    }

    /// `I/d` over `dims`.
    pub fn maximally_mixed(dims: DimSpec) -> Self {
        let n = dims.total();
        DensityOp {
            matrix: Matrix::identity(n).scale_real(1.0 / n as f64),
            dims,
        }
    }

    pub fn dims(&self) -> &DimSpec {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigvalsh(&self.matrix)
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ|ρ_ij|² for Hermitian ρ
        self.matrix.data().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Convex combination `Σ w_i ρ_i` of states on the same dims.
    pub fn mixture(parts: &[(f64, &DensityOp)]) -> Result<DensityOp> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| QuditError::Domain("empty mixture".into()))?;
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > TRACE_TOL {
            return Err(QuditError::Domain(
                "mixture weights must be >= 0 and sum to 1".into(),
            ));
        }
        let mut acc = Matrix::zeros(first.dim(), first.dim());
        for (w, r) in parts {
            if r.dims != first.dims {
                return Err(QuditError::Dimension(
                    "mixture of states with different dims".into(),
                ));
            }
            acc = &acc + &r.matrix.scale_real(*w);
        }
        Ok(DensityOp::from_trusted(acc, first.dims.clone()))
    }
}

/// Validates `m` as a density operator on `dims`.
///
/// The returned operator holds the Hermitian part of `m`.
pub fn validate_density(m: &Matrix, dims: DimSpec) -> Result<DensityOp> {
    if !m.is_square() {
        return Err(QuditError::Shape(format!(
            "density matrix is {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    dims.check_side(m.rows())?;
    let dev = m.hermitian_deviation();
    if dev > HERMITICITY_TOL {
        return Err(QuditError::Hermiticity(format!(
            "max |rho - rho^dagger| = {dev:e}"
        )));
    }
    let tr = m.trace()?;
    if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
        return Err(QuditError::Normalization(format!(
            "trace is {tr}, expected 1"
        )));
    }
    let h = m.hermitian_part();
    let min = eigvalsh(&h)?[0];
    if min < -POSITIVITY_TOL {
        return Err(QuditError::Positivity(format!(
            "minimum eigenvalue {min:e} is negative"
        )));
    }
    Ok(DensityOp { dims, matrix: h })
}

/// `|ψ⟩⟨ψ|`.
pub fn dm_from_ket(psi: &Ket) -> DensityOp {
    DensityOp::from_trusted(psi.projector(), psi.dims().clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PurityKind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityClass {
    pub kind: PurityKind,
    /// `tr(ρ²)`.
    pub value: f64,
}

/// Pure iff `tr(ρ²) ≥ 1 − 1e−9`.
pub fn purity_class(rho: &DensityOp) -> PurityClass {
    let value = rho.purity();
    let kind = if value >= 1.0 - PURE_TOL {
        PurityKind::Pure
    } else {
        PurityKind::Mixed
    };
    PurityClass { kind, value }
}

/// Deletes all off-diagonal entries in the computational basis.
pub fn dephase(rho: &DensityOp) -> DensityOp {
    let diag = rho.matrix.diagonal();
    DensityOp::from_trusted(Matrix::from_diag(&diag), rho.dims.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> DimSpec {
        DimSpec::single(2).unwrap()
    }

    #[test]
    fn validation_examples() {
        let mixed = validate_density(&Matrix::identity(2).scale_real(0.5), q()).unwrap();
        assert_eq!(purity_class(&mixed).kind, PurityKind::Mixed);
        assert!((purity_class(&mixed).value - 0.5).abs() < 1e-15);
        let pure = validate_density(&Matrix::from_real_diag(&[1.0, 0.0]), q()).unwrap();
        assert_eq!(purity_class(&pure).kind, PurityKind::Pure);
        assert!(matches!(
            validate_density(&Matrix::from_real_diag(&[1.5, -0.5]), q()),
            Err(QuditError::Positivity(_))
        ));
        assert!(matches!(
            validate_density(&Matrix::from_real_diag(&[1.0, 1.0]), q()),
            Err(QuditError::Normalization(_))
        ));
        let skew = Matrix::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(matches!(
            validate_density(&skew, q()),
            Err(QuditError::Hermiticity(_))
        ));
        assert!(matches!(
            validate_density(&Matrix::identity(3).scale_real(1.0 / 3.0), q()),
            Err(QuditError::Shape(_))
        ));
    }

    #[test]
    fn purity_of_biased_mixture() {
        let r = validate_density(&Matrix::from_real_diag(&[0.9, 0.1]), q()).unwrap();
        let p = purity_class(&r);
        assert_eq!(p.kind, PurityKind::Mixed);
        assert!((p.value - 0.82).abs() < 1e-15);
    }

    #[test]
    fn dephase_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = dm_from_ket(&Ket::from_real(&[h, h], q()).unwrap());
        let d = dephase(&plus);
        assert!(
            d.matrix()
                .max_abs_diff(&Matrix::identity(2).scale_real(0.5))
                < 1e-15
        );
        assert_eq!(dephase(&d), d);
    }
}
