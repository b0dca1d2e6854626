use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use super::check_dimension;
use crate::error::{QuditError, Result};

/// Complex scalar used for every matrix entry and amplitude.
pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
#[cfg(test)]
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Dense complex matrix stored row-major.
///
/// Every operator in the crate (observables, gates, density matrices,
/// generators) is carried by this type. Constructors reject non-finite
/// entries; arithmetic on finite inputs is assumed to stay finite.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    /// Builds a matrix from row-major data, checking length and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(QuditError::Shape(format!(
                "data length {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(QuditError::Domain(format!(
                "non-finite entry at ({}, {})",
                pos / cols.max(1),
                pos % cols.max(1)
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Square matrix with the given complex diagonal.
    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zeros(n, n);
        for (i, z) in diag.iter().enumerate() {
            m.data[i * n + i] = *z;
        }
        m
    }

    /// Square matrix with the given real diagonal.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Matrix::from_diag(&d)
    }

    /// Builds a matrix from complex rows; all rows must share a length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(QuditError::Shape("ragged rows".into()));
        }
        Matrix::new(r, c, rows.iter().flatten().copied().collect())
    }

    /// Builds a matrix from real rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let complex: Vec<Vec<C64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Matrix::from_rows(&complex)
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Self {
        let mut data = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                data.push(x * y.conj());
            }
        }
        Matrix::from_vec_unchecked(a.len(), b.len(), data)
    }

    /// Column vector holding `v`.
    pub fn column(v: &[C64]) -> Self {
        Matrix::from_vec_unchecked(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn column_vec(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix::from_vec_unchecked(
            self.rows,
            self.cols,
            self.data.iter().map(|z| z.conj()).collect(),
        )
    }

    pub fn scale(&self, z: C64) -> Matrix {
        Matrix::from_vec_unchecked(
            self.rows,
            self.cols,
            self.data.iter().map(|x| x * z).collect(),
        )
    }

    pub fn scale_real(&self, x: f64) -> Matrix {
        self.scale(C64::new(x, 0.0))
    }

    /// Matrix product with shape checking.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(QuditError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * p];
        for i in 0..n {
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * p..(k + 1) * p];
                let dst = &mut out[i * p..(i + 1) * p];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(Matrix::from_vec_unchecked(n, p, out))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(QuditError::Shape(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    fn zip_with(&self, other: &Matrix, op: &str, f: impl Fn(C64, C64) -> C64) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(QuditError::Shape(format!(
                "cannot {} {}x{} and {}x{}",
                op, self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_vec_unchecked(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        ))
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "subtract", |a, b| a - b)
    }

    /// Sum of the diagonal. Undefined (shape error) for non-square input.
    pub fn trace(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(QuditError::Shape(format!(
                "trace of non-square {}x{} matrix is undefined",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Matrix) -> Result<C64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(QuditError::Shape(format!(
                "tr(AB) needs conforming shapes, got {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.data[i * self.cols + k] * other.data[k * other.cols + i];
            }
        }
        Ok(acc)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self − other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A − A†|` entrywise; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `max |U†U − I|` entrywise; infinite for non-square input.
    pub fn unitary_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let gram = self.dagger().matmul(self).expect("square");
        gram.max_abs_diff(&Matrix::identity(self.rows))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Matrix {
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
            }
        }
        out
    }

    /// Determinant by LU elimination with partial pivoting.
    pub fn determinant(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(QuditError::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap_or(col);
            if a[pivot * n + col].norm() == 0.0 {
                return Ok(ZERO);
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in (col + 1)..n {
                let factor = a[r * n + col] / p;
                if factor == ZERO {
                    continue;
                }
                for k in col..n {
                    let v = a[col * n + k];
                    a[r * n + k] -= factor * v;
                }
            }
        }
        Ok(det)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

// The operator impls panic on shape mismatch, the way ndarray does; the
// `try_*` / `matmul` methods are the fallible counterparts.

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix addition shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs)
            .expect("matrix subtraction shape mismatch")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Mul<C64> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: C64) -> Matrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: f64) -> Matrix {
        self.scale_real(rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale_real(-1.0)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>10.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `A ⊗ B`.
///
/// Fails with a dimension error when either output dimension would exceed
/// the configured cap (see [`super::max_dimension`]).
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let rows = a
        .rows
        .checked_mul(b.rows)
        .ok_or_else(|| QuditError::Dimension("row count overflow".into()))?;
    let cols = a
        .cols
        .checked_mul(b.cols)
        .ok_or_else(|| QuditError::Dimension("column count overflow".into()))?;
    check_dimension(rows.max(cols))?;
    let mut data = vec![ZERO; rows * cols];
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x == ZERO {
                continue;
            }
            for k in 0..b.rows {
                let dst = (i * b.rows + k) * cols + j * b.cols;
                let src = &b.data[k * b.cols..(k + 1) * b.cols];
                for (d, y) in data[dst..dst + b.cols].iter_mut().zip(src) {
                    *d = x * y;
                }
            }
        }
    }
    Ok(Matrix::from_vec_unchecked(rows, cols, data))
}

/// Kronecker product of a non-empty sequence, left to right.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Result<Matrix> {
    let mut iter = factors.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| QuditError::Shape("empty Kronecker product".into()))?
        .clone();
    iter.try_fold(first, |acc, m| kron(&acc, m))
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Result<Vec<C64>> {
    let n = a
        .len()
        .checked_mul(b.len())
        .ok_or_else(|| QuditError::Dimension("vector length overflow".into()))?;
    check_dimension(n)?;
    Ok(a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect())
}

fn check_same_square(a: &Matrix, b: &Matrix) -> Result<()> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(QuditError::Shape(format!(
            "expected equal square shapes, got {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(())
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_same_square(a, b)?;
    Ok(&(a * b) - &(b * a))
}

/// `{A, B} = AB + BA`.
pub fn anticommutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_same_square(a, b)?;
    Ok(&(a * b) + &(b * a))
}

/// Characteristic-polynomial coefficients `a_0..a_d` from a spectrum.
///
/// `a_0 = 1` and `a_j` is the elementary symmetric polynomial of degree `j`
/// in the eigenvalues, so `det(λI − A) = Σ_j (−1)^j a_j λ^{d−j}`.
pub fn char_coeffs_from_eigs(eigs: &[f64]) -> Vec<f64> {
    let mut coeffs = vec![0.0; eigs.len() + 1];
    coeffs[0] = 1.0;
    for (n, &lambda) in eigs.iter().enumerate() {
        for j in (1..=n + 1).rev() {
            coeffs[j] += lambda * coeffs[j - 1];
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> Matrix {
        Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn pauli_y() -> Matrix {
        Matrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap()
    }

    fn pauli_z() -> Matrix {
        Matrix::from_real_diag(&[1.0, -1.0])
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = kron(&Matrix::identity(2), &Matrix::identity(2)).unwrap();
        assert_eq!(k, Matrix::identity(4));
    }

    #[test]
    fn kron_sigma_x_identity_is_block_antidiagonal() {
        let k = kron(&pauli_x(), &Matrix::identity(2)).unwrap();
        let expected = Matrix::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn trace_of_kron_factorizes() {
        let k = kron(&pauli_z(), &pauli_z()).unwrap();
        assert_eq!(k.trace().unwrap(), ZERO);
        let a = Matrix::from_real_diag(&[2.0, 3.0]);
        let b = Matrix::from_real_diag(&[1.0, 4.0, 5.0]);
        let t = kron(&a, &b).unwrap().trace().unwrap();
        assert_eq!(t, a.trace().unwrap() * b.trace().unwrap());
    }

    #[test]
    fn kron_respects_dimension_cap() {
        let big = Matrix::identity(64);
        let err = kron(&big, &Matrix::identity(128)).unwrap_err();
        assert!(matches!(err, QuditError::Dimension(_)));
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(pauli_y().dagger(), pauli_y());
        let n = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert_eq!(
            n.dagger(),
            Matrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).unwrap()
        );
        assert_eq!(
            Matrix::identity(2).scale(I).dagger(),
            Matrix::identity(2).scale(-I)
        );
    }

    #[test]
    fn trace_examples() {
        assert_eq!(Matrix::identity(5).trace().unwrap(), C64::new(5.0, 0.0));
        assert_eq!(pauli_x().trace().unwrap(), ZERO);
        let ket0 = [ONE, ZERO];
        let ket1 = [ZERO, ONE];
        assert_eq!(Matrix::outer(&ket0, &ket1).trace().unwrap(), ZERO);
        let rect = Matrix::zeros(2, 3);
        assert!(matches!(rect.trace(), Err(QuditError::Shape(_))));
    }

    #[test]
    fn pauli_commutation_relations() {
        let c = commutator(&pauli_x(), &pauli_y()).unwrap();
        assert!(c.max_abs_diff(&pauli_z().scale(C64::new(0.0, 2.0))) < 1e-15);
        let ac = anticommutator(&pauli_x(), &pauli_y()).unwrap();
        assert!(ac.max_abs() < 1e-15);
        let self_comm = commutator(&pauli_x(), &pauli_x()).unwrap();
        assert_eq!(self_comm.max_abs(), 0.0);
        assert!(commutator(&pauli_x(), &Matrix::identity(3)).is_err());
    }

    #[test]
    fn char_coeff_examples() {
        assert_eq!(char_coeffs_from_eigs(&[1.0, 0.0]), vec![1.0, 1.0, 0.0]);
        assert_eq!(char_coeffs_from_eigs(&[0.5, 0.5]), vec![1.0, 1.0, 0.25]);
        let psd = char_coeffs_from_eigs(&[0.1, 0.2, 0.3, 0.4]);
        assert!(psd.iter().all(|&a| a >= 0.0));
    }

    #[test]
    fn determinant_matches_hand_values() {
        let m = Matrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]).unwrap();
        assert!((m.determinant().unwrap() - C64::new(5.0, 0.0)).norm() < 1e-15);
        assert!((pauli_y().determinant().unwrap() - C64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(Matrix::zeros(3, 3).determinant().unwrap(), ZERO);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(
            Matrix::new(2, 2, vec![ZERO; 3]),
            Err(QuditError::Shape(_))
        ));
        let nan = vec![C64::new(f64::NAN, 0.0); 4];
        assert!(matches!(Matrix::new(2, 2, nan), Err(QuditError::Domain(_))));
    }
}
