use super::DimSpec;
use crate::error::{QuditError, Result};
use crate::linalg::{Matrix, C64};

/// Tolerance on `Σ|c_j|² = 1` for a ket.
pub const KET_NORM_TOL: f64 = 1e-12;

/// Normalized state vector over a [`DimSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    dims: DimSpec,
    amps: Vec<C64>,
}

impl Ket {
    /// Checks length against `dims` and normalization within [`KET_NORM_TOL`].
    pub fn new(amps: Vec<C64>, dims: DimSpec) -> Result<Self> {
        check_len(&amps, &dims)?;
        check_finite(&amps)?;
        let n2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (n2 - 1.0).abs() > KET_NORM_TOL {
            return Err(QuditError::Normalization(format!(
                "ket has squared norm {n2}, expected 1"
            )));
        }
        Ok(Ket { dims, amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(amps: Vec<C64>, dims: DimSpec) -> Result<Self> {
        check_len(&amps, &dims)?;
        check_finite(&amps)?;
        let n = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 {
            return Err(QuditError::Normalization(
                "zero vector cannot be normalized".into(),
            ));
        }
        Ok(Ket {
            dims,
            amps: amps.into_iter().map(|z| z / n).collect(),
        })
    }

    pub fn from_real(amps: &[f64], dims: DimSpec) -> Result<Self> {
        Ket::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect(), dims)
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dims: DimSpec, index: usize) -> Result<Self> {
        let n = dims.total();
        if index >= n {
            return Err(QuditError::Index(format!(
                "basis index {index} >= dimension {n}"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); n];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Ket { dims, amps })
    }

    /// Basis vector labelled by per-subsystem digits, e.g. `[0, 1]` for `|01⟩`.
    pub fn basis_digits(dims: DimSpec, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.len() || digits.iter().zip(dims.dims()).any(|(&i, &d)| i >= d) {
            return Err(QuditError::Index(format!(
                "digits {digits:?} invalid for dims {dims}"
            )));
        }
        let idx = digits.iter().zip(dims.strides()).map(|(i, s)| i * s).sum();
        Ket::basis(dims, idx)
    }

    pub(crate) fn from_trusted(amps: Vec<C64>, dims: DimSpec) -> Self {
        Ket { dims, amps }
    }

    pub fn dims(&self) -> &DimSpec {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> Result<C64> {
        if self.amps.len() != other.amps.len() {
            return Err(QuditError::Shape(format!(
                "inner product of kets of length {} and {}",
                self.amps.len(),
                other.amps.len()
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Ket) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Global phase fixed so the largest-magnitude amplitude is real positive.
    /// Ties are broken toward the lowest index.
    pub fn canonical(&self) -> Ket {
        Ket {
            dims: self.dims.clone(),
            amps: canonical_phase(&self.amps),
        }
    }

    /// Largest amplitude difference after canonicalizing both kets.
    pub fn max_diff_canonical(&self, other: &Ket) -> f64 {
        if self.amps.len() != other.amps.len() {
            return f64::INFINITY;
        }
        let a = canonical_phase(&self.amps);
        let b = canonical_phase(&other.amps);
        a.iter()
            .zip(&b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// `|ψ⟩⟨ψ|` as a plain matrix.
    pub fn projector(&self) -> Matrix {
        Matrix::outer(&self.amps, &self.amps)
    }
}

/// Rotates the global phase so the first amplitude of (near-)maximal modulus
/// becomes real positive.
pub fn canonical_phase(amps: &[C64]) -> Vec<C64> {
    let max = amps.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return amps.to_vec();
    }
    let pivot = amps
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-9))
        .expect("nonzero");
    let phase = pivot.conj() / pivot.norm();
    amps.iter().map(|z| z * phase).collect()
}

fn check_len(amps: &[C64], dims: &DimSpec) -> Result<()> {
    if amps.len() != dims.total() {
        return Err(QuditError::Shape(format!(
            "{} amplitudes for dims {dims} (total {})",
            amps.len(),
            dims.total()
        )));
    }
    Ok(())
}

fn check_finite(amps: &[C64]) -> Result<()> {
    if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(QuditError::Domain("non-finite amplitude".into()));
    }
    Ok(())
}
