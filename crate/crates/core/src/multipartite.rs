//! Composite systems: tensor composition, partial trace, partial transpose,
//! Schmidt decomposition and the PPT test.

use crate::error::{QuditError, Result};
use crate::linalg::{eigvalsh, kron, kron_vec, svd, Matrix, C64};
use crate::states::{DensityOp, DimSpec, Ket};

/// Schmidt coefficients at or below this count as zero.
pub const SCHMIDT_RANK_TOL: f64 = 1e-10;
/// PPT verdict threshold on the minimum eigenvalue.
pub const PPT_TOL: f64 = 1e-10;
/// Tolerance of [`is_maximally_entangled`].
pub const MAX_ENTANGLED_TOL: f64 = 1e-9;

/// States that compose by tensor product.
pub trait Compose: Sized {
    fn tensor(&self, other: &Self) -> Result<Self>;
}

impl Compose for Ket {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let dims = self.dims().concat(other.dims())?;
        Ok(Ket::from_trusted(
            kron_vec(self.amplitudes(), other.amplitudes())?,
            dims,
        ))
    }
}

impl Compose for DensityOp {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let dims = self.dims().concat(other.dims())?;
        Ok(DensityOp::from_trusted(
            kron(self.matrix(), other.matrix())?,
            dims,
        ))
    }
}

/// `s_1 ⊗ s_2 ⊗ …`, leftmost factor first.
pub fn compose<S: Compose + Clone>(states: &[S]) -> Result<S> {
    let (first, rest) = states
        .split_first()
        .ok_or_else(|| QuditError::Domain("nothing to compose".into()))?;
    rest.iter().try_fold(first.clone(), |acc, s| acc.tensor(s))
}

fn check_keep(dims: &DimSpec, keep: &[usize]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(QuditError::Index("no subsystem kept".into()));
    }
    let mut k = keep.to_vec();
    k.sort_unstable();
    if k.windows(2).any(|w| w[0] == w[1]) {
        return Err(QuditError::Index(format!(
            "duplicate subsystem in {keep:?}"
        )));
    }
    if let Some(&bad) = k.iter().find(|&&s| s >= dims.len()) {
        return Err(QuditError::Index(format!(
            "subsystem {bad} out of range for {} subsystems",
            dims.len()
        )));
    }
    Ok(k)
}

/// Reduced state on the subsystems in `keep` (0-based; order is ignored,
/// the result keeps the original subsystem order).
///
/// Computed by contracting the traced indices of the dims-shaped view.
pub fn partial_trace(rho: &DensityOp, keep: &[usize]) -> Result<DensityOp> {
    let dims = rho.dims();
    let keep = check_keep(dims, keep)?;
    let d = dims.dims();
    let traced: Vec<usize> = (0..d.len()).filter(|s| !keep.contains(s)).collect();
    let kept_dims = DimSpec::new(keep.iter().map(|&s| d[s]).collect())?;
    let n_keep = kept_dims.total();
    let n_trace: usize = traced.iter().map(|&s| d[s]).product();
    let strides = dims.strides();

    // full[k][t] = composite index with kept digits k and traced digits t
    let traced_digits: Vec<Vec<usize>> = (0..n_trace)
        .map(|t| {
            let mut out = vec![0; traced.len()];
            let mut t = t;
            for i in (0..traced.len()).rev() {
                out[i] = t % d[traced[i]];
                t /= d[traced[i]];
            }
            out
        })
        .collect();
    let mut full = vec![0usize; n_keep * n_trace];
    for k in 0..n_keep {
        let kd = kept_dims.digits(k);
        let base: usize = kd.iter().zip(&keep).map(|(x, &s)| x * strides[s]).sum();
        for (t, td) in traced_digits.iter().enumerate() {
            let off: usize = td.iter().zip(&traced).map(|(x, &s)| x * strides[s]).sum();
            full[k * n_trace + t] = base + off;
        }
    }

    let m = rho.matrix();
    let mut out = Matrix::zeros(n_keep, n_keep);
    for i in 0..n_keep {
        for j in 0..n_keep {
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..n_trace {
                acc += m.get(full[i * n_trace + t], full[j * n_trace + t]);
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityOp::from_trusted(out, kept_dims))
}

/// Transpose of subsystem `sys` of a square matrix over `dims`.
pub fn partial_transpose_matrix(m: &Matrix, dims: &DimSpec, sys: usize) -> Result<Matrix> {
    if !m.is_square() {
        return Err(QuditError::Shape(
            "partial transpose of a non-square matrix".into(),
        ));
    }
    dims.check_side(m.rows())?;
    if sys >= dims.len() {
        return Err(QuditError::Index(format!(
            "subsystem {sys} out of range for {} subsystems",
            dims.len()
        )));
    }
    let n = m.rows();
    let stride = dims.strides()[sys];
    let ds = dims.dims()[sys];
    let digit = |i: usize| (i / stride) % ds;
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (digit(i), digit(j));
            let i2 = i - a * stride + b * stride;
            let j2 = j - b * stride + a * stride;
            out[(i2, j2)] = m.get(i, j);
        }
    }
    Ok(out)
}

/// Partial transpose of subsystem `sys` (0-based).
pub fn partial_transpose(rho: &DensityOp, sys: usize) -> Result<Matrix> {
    partial_transpose_matrix(rho.matrix(), rho.dims(), sys)
}

/// Schmidt form `|ψ⟩ = Σ_k c_k |a_k⟩ ⊗ |b_k⟩`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomp {
    /// Descending, nonnegative.
    pub coefficients: Vec<f64>,
    /// Columns `|a_k⟩`.
    pub left_basis: Matrix,
    /// Columns `|b_k⟩`.
    pub right_basis: Matrix,
    /// Number of coefficients above [`SCHMIDT_RANK_TOL`].
    pub rank: usize,
    dims: DimSpec,
}

impl SchmidtDecomp {
    /// `Σ_k c_k |a_k⟩ ⊗ |b_k⟩`.
    pub fn reconstruct(&self) -> Ket {
        let mut amps = vec![C64::new(0.0, 0.0); self.dims.total()];
        for (k, &c) in self.coefficients.iter().enumerate() {
            let a = self.left_basis.column_vec(k);
            let b = self.right_basis.column_vec(k);
            let ab = kron_vec(&a, &b).expect("within cap");
            for (x, y) in amps.iter_mut().zip(ab) {
                *x += y * c;
            }
        }
        Ket::from_trusted(amps, self.dims.clone())
    }
}

fn check_bipartite(dims: &DimSpec) -> Result<()> {
    if dims.len() != 2 {
        return Err(QuditError::Dimension(format!(
            "expected a bipartite system, got dims {dims}"
        )));
    }
    Ok(())
}

/// Schmidt decomposition of `psi` across the cut given by the two-entry
/// `dims` (whose product must equal the ket dimension).
pub fn schmidt(psi: &Ket, dims: &DimSpec) -> Result<SchmidtDecomp> {
    check_bipartite(dims)?;
    dims.check_side(psi.dim())?;
    let (da, db) = (dims.dims()[0], dims.dims()[1]);
    let c = Matrix::new(da, db, psi.amplitudes().to_vec())?;
    let s = svd(&c)?;
    // C = U S V†  ⇒  ψ = Σ s_k u_k ⊗ conj(v_k)
    let right = s.v.conj();
    let rank = s
        .singular_values
        .iter()
        .filter(|&&x| x > SCHMIDT_RANK_TOL)
        .count();
    Ok(SchmidtDecomp {
        coefficients: s.singular_values,
        left_basis: s.u,
        right_basis: right,
        rank,
        dims: dims.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PptVerdict {
    /// Positive partial transpose where the criterion is necessary and
    /// sufficient (`d_a·d_b ≤ 6`).
    SeparableByPpt,
    /// Negative partial transpose.
    Entangled,
    /// Positive partial transpose in dimensions where that proves nothing.
    PptInconclusive,
}

impl PptVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            PptVerdict::SeparableByPpt => "separable-by-ppt",
            PptVerdict::Entangled => "entangled",
            PptVerdict::PptInconclusive => "ppt-inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptReport {
    pub min_eig: f64,
    pub verdict: PptVerdict,
}

/// Minimum eigenvalue of the partial transpose (second subsystem) of a
/// bipartite Hermitian matrix.
pub fn ppt_min_eig_matrix(m: &Matrix, dims: &DimSpec) -> Result<f64> {
    check_bipartite(dims)?;
    let pt = partial_transpose_matrix(m, dims, 1)?;
    Ok(eigvalsh(&pt)?[0])
}

/// Peres–Horodecki test.
pub fn ppt_test(rho: &DensityOp) -> Result<PptReport> {
    let min_eig = ppt_min_eig_matrix(rho.matrix(), rho.dims())?;
    let verdict = if min_eig < -PPT_TOL {
        PptVerdict::Entangled
    } else if rho.dims().total() <= 6 {
        PptVerdict::SeparableByPpt
    } else {
        PptVerdict::PptInconclusive
    };
    Ok(PptReport { min_eig, verdict })
}

/// True iff every Schmidt coefficient equals `1/√min(d_a, d_b)`.
pub fn is_maximally_entangled(psi: &Ket, dims: &DimSpec) -> Result<bool> {
    let s = schmidt(psi, dims)?;
    let dmin = dims.dims()[0].min(dims.dims()[1]);
    let target = 1.0 / (dmin as f64).sqrt();
    Ok(s.coefficients
        .iter()
        .all(|c| (c - target).abs() <= MAX_ENTANGLED_TOL))
}
