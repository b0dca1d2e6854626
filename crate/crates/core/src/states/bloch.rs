use super::{DensityOp, DimSpec};
use crate::error::{QuditError, Result};
use crate::generators::{full_basis, GeneratorBasis};
use crate::linalg::{eigvalsh, Matrix, C64};

/// Most negative eigenvalue accepted when rebuilding a state from Bloch
/// coefficients.
pub const BLOCH_POSITIVITY_TOL: f64 = 1e-10;
/// Tolerance on `r_{0..0} = 1/Π d_s`.
pub const BLOCH_TRACE_TOL: f64 = 1e-12;

/// Coefficients `r_J` of `ρ = Σ_J r_J Γ_{j_1} ⊗ … ⊗ Γ_{j_N}`.
///
/// Each `j_s` ranges over `0..d_s²` in the flat order of
/// [`GeneratorBasis`]; `j_s = 0` is the identity. Storage is dense in
/// row-major multi-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochCoeffs {
    dims: DimSpec,
    coeffs: Vec<f64>,
}

impl BlochCoeffs {
    /// Wraps a dense coefficient array, checking its length only.
    pub fn from_values(dims: DimSpec, coeffs: Vec<f64>) -> Result<Self> {
        let n: usize = dims.dims().iter().map(|d| d * d).product();
        if coeffs.len() != n {
            return Err(QuditError::Shape(format!(
                "{} Bloch coefficients for dims {dims}, expected {n}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|x| !x.is_finite()) {
            return Err(QuditError::Domain("non-finite Bloch coefficient".into()));
        }
        Ok(BlochCoeffs { dims, coeffs })
    }

    pub fn dims(&self) -> &DimSpec {
        &self.dims
    }

    pub fn values(&self) -> &[f64] {
        &self.coeffs
    }

    fn radices(&self) -> Vec<usize> {
        self.dims.dims().iter().map(|d| d * d).collect()
    }

    fn flat_index(&self, multi: &[usize]) -> Option<usize> {
        let radices = self.radices();
        if multi.len() != radices.len() {
            return None;
        }
        let mut idx = 0;
        for (&j, &r) in multi.iter().zip(&radices) {
            if j >= r {
                return None;
            }
            idx = idx * r + j;
        }
        Some(idx)
    }

    fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let radices = self.radices();
        let mut out = vec![0; radices.len()];
        for s in (0..radices.len()).rev() {
            out[s] = flat % radices[s];
            flat /= radices[s];
        }
        out
    }

    /// `r_{j_1..j_N}`, or `None` if the multi-index is out of range.
    pub fn get(&self, multi: &[usize]) -> Option<f64> {
        self.flat_index(multi).map(|i| self.coeffs[i])
    }

    pub fn set(&mut self, multi: &[usize], value: f64) -> Result<()> {
        let i = self
            .flat_index(multi)
            .ok_or_else(|| QuditError::Index(format!("multi-index {multi:?} out of range")))?;
        self.coeffs[i] = value;
        Ok(())
    }

    /// `(multi-index, r)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.multi_index(i), v))
    }

    pub fn max_abs_diff(&self, other: &BlochCoeffs) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

type Sparse = Vec<(usize, usize, C64)>;

fn sparse(m: &Matrix) -> Sparse {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m.get(i, j);
            if z != C64::new(0.0, 0.0) {
                out.push((i, j, z));
            }
        }
    }
    out
}

/// Calls `f(row, col, value)` for every nonzero entry of `⊗_s factors[s]`.
fn for_each_kron_entry(
    factors: &[&Sparse],
    strides: &[usize],
    f: &mut impl FnMut(usize, usize, C64),
) {
    fn go(
        factors: &[&Sparse],
        strides: &[usize],
        s: usize,
        row: usize,
        col: usize,
        val: C64,
        f: &mut impl FnMut(usize, usize, C64),
    ) {
        if s == factors.len() {
            f(row, col, val);
            return;
        }
        for &(i, j, z) in factors[s] {
            go(
                factors,
                strides,
                s + 1,
                row + i * strides[s],
                col + j * strides[s],
                val * z,
                f,
            );
        }
    }
    go(factors, strides, 0, 0, 0, C64::new(1.0, 0.0), f);
}

fn default_bases(dims: &DimSpec) -> Result<Vec<GeneratorBasis>> {
    dims.dims().iter().map(|&d| full_basis(d)).collect()
}

fn check_bases(dims: &DimSpec, bases: &[GeneratorBasis]) -> Result<()> {
    if bases.len() != dims.len() || bases.iter().zip(dims.dims()).any(|(b, &d)| b.dim() != d) {
        return Err(QuditError::Dimension(format!(
            "generator bases do not match dims {dims}"
        )));
    }
    Ok(())
}

/// Normalizer `2^{#non-identity} · Π_{identity sites} d_s` for a multi-index.
fn normalizer(multi: &[usize], dims: &[usize]) -> f64 {
    multi
        .iter()
        .zip(dims)
        .map(|(&j, &d)| if j == 0 { d as f64 } else { 2.0 })
        .product()
}

/// Bloch coefficients in the GGM basis of each subsystem.
pub fn bloch_from_dm(rho: &DensityOp) -> Result<BlochCoeffs> {
    let bases = default_bases(rho.dims())?;
    bloch_from_dm_with(rho, &bases)
}

/// `r_J = tr(ρ Γ_J) / (2^{#non-identity} · Π_{identity sites} d_s)`.
pub fn bloch_from_dm_with(rho: &DensityOp, bases: &[GeneratorBasis]) -> Result<BlochCoeffs> {
    let dims = rho.dims();
    check_bases(dims, bases)?;
    let sparse_bases: Vec<Vec<Sparse>> = bases
        .iter()
        .map(|b| b.flat().iter().map(sparse).collect())
        .collect();
    let strides = dims.strides();
    let m = rho.matrix();
    let mut out = BlochCoeffs::from_values(
        dims.clone(),
        vec![0.0; dims.dims().iter().map(|d| d * d).product()],
    )?;
    for flat in 0..out.coeffs.len() {
        let multi = out.multi_index(flat);
        let factors: Vec<&Sparse> = multi
            .iter()
            .enumerate()
            .map(|(s, &j)| &sparse_bases[s][j])
            .collect();
        let mut acc = C64::new(0.0, 0.0);
        // tr(ρ G) = Σ_{r,c} ρ[c,r] G[r,c]
        for_each_kron_entry(&factors, &strides, &mut |r, c, g| acc += m.get(c, r) * g);
        out.coeffs[flat] = acc.re / normalizer(&multi, dims.dims());
    }
    Ok(out)
}

/// Rebuilds `ρ = Σ_J r_J Γ_J` and validates it.
pub fn dm_from_bloch(b: &BlochCoeffs) -> Result<DensityOp> {
    let bases = default_bases(b.dims())?;
    dm_from_bloch_with(b, &bases)
}

pub fn dm_from_bloch_with(b: &BlochCoeffs, bases: &[GeneratorBasis]) -> Result<DensityOp> {
    let dims = b.dims();
    check_bases(dims, bases)?;
    let expected = 1.0 / dims.total() as f64;
    let r0 = b.coeffs[0];
    if (r0 - expected).abs() > BLOCH_TRACE_TOL {
        return Err(QuditError::Normalization(format!(
            "identity coefficient {r0} differs from 1/{}",
            dims.total()
        )));
    }
    let sparse_bases: Vec<Vec<Sparse>> = bases
        .iter()
        .map(|b| b.flat().iter().map(sparse).collect())
        .collect();
    let strides = dims.strides();
    let n = dims.total();
    let mut m = Matrix::zeros(n, n);
    for (flat, &r) in b.coeffs.iter().enumerate() {
        if r == 0.0 {
            continue;
        }
        let multi = b.multi_index(flat);
        let factors: Vec<&Sparse> = multi
            .iter()
            .enumerate()
            .map(|(s, &j)| &sparse_bases[s][j])
            .collect();
        for_each_kron_entry(&factors, &strides, &mut |i, j, g| m[(i, j)] += g * r);
    }
    let min = eigvalsh(&m)?[0];
    if min < -BLOCH_POSITIVITY_TOL {
        return Err(QuditError::Positivity(format!(
            "Bloch point lies outside the state space (minimum eigenvalue {min:e})"
        )));
    }
    Ok(DensityOp::from_trusted(m, dims.clone()))
}

/// Rescaled qubit Bloch vector `v = (⟨σx⟩, ⟨σy⟩, ⟨σz⟩)`, so `ρ = (I + v·σ)/2`.
pub fn qubit_bloch_vector(rho: &DensityOp) -> Result<[f64; 3]> {
    if rho.dims().dims() != [2] {
        return Err(QuditError::Dimension(format!(
            "expected a qubit, got dims {}",
            rho.dims()
        )));
    }
    let m = rho.matrix();
    let off = m.get(1, 0);
    Ok([2.0 * off.re, 2.0 * off.im, (m.get(0, 0) - m.get(1, 1)).re])
}

/// Qubit state with rescaled Bloch vector `v`; positivity error if `‖v‖ > 1`.
pub fn dm_from_qubit_bloch(v: [f64; 3]) -> Result<DensityOp> {
    // flat order: I, σz, σx, σy
    let b = BlochCoeffs::from_values(
        DimSpec::single(2)?,
        vec![0.5, v[2] / 2.0, v[0] / 2.0, v[1] / 2.0],
    )?;
    dm_from_bloch(&b)
}
