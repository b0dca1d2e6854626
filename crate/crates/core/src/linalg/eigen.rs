//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! spectral matrix functions built on it.

use super::matrix::{Matrix, C64, ZERO};
use crate::error::{QuditError, Result};

/// Largest tolerated `max |A − A†|` entry before symmetrization.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Sweeps stop once the off-diagonal Frobenius norm falls below this
/// (relative to the Frobenius norm of the input, floored at 1).
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;

/// Spectrum of a Hermitian matrix.
///
/// `eigenvalues` are ascending; column `k` of `eigenvectors` is the unit
/// eigenvector for `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct EigDecomp {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigDecomp {
    /// `V · diag(f(λ)) · V†` for a complex-valued spectral function.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> C64) -> Matrix {
        let n = self.eigenvalues.len();
        let weights: Vec<C64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let v = &self.eigenvectors;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = weights
                    .iter()
                    .enumerate()
                    .map(|(k, w)| v.get(i, k) * w * v.get(j, k).conj())
                    .sum();
            }
        }
        Matrix::from_vec_unchecked(n, n, data)
    }

    pub fn reconstruct(&self) -> Matrix {
        self.reconstruct_with(|l| C64::new(l, 0.0))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

fn off_diagonal_norm(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized to `(A + A†)/2` first; inputs whose asymmetry
/// exceeds [`HERMITIAN_TOL`] are rejected with a domain error.
pub fn hermitian_eig(a: &Matrix) -> Result<EigDecomp> {
    if !a.is_square() {
        return Err(QuditError::Shape(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let asym = a.hermitian_deviation();
    if asym > HERMITIAN_TOL {
        return Err(QuditError::Domain(format!(
            "matrix is not Hermitian (max |A - A^dagger| = {asym:.3e})"
        )));
    }
    let n = a.rows();
    let mut m = a.hermitian_part().into_data();
    for i in 0..n {
        m[i * n + i] = C64::new(m[i * n + i].re, 0.0);
    }
    let mut v = Matrix::identity(n).into_data();

    let scale = a.frobenius_norm().max(1.0);
    let mut converged = off_diagonal_norm(&m, n) <= OFF_DIAGONAL_TOL * scale;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&m, n) <= OFF_DIAGONAL_TOL * scale;
    }
    if !converged {
        return Err(QuditError::Numerical(format!(
            "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x * n + x].re.total_cmp(&m[y * n + y].re));
    let eigenvalues = order.iter().map(|&k| m[k * n + k].re).collect();
    let mut vecs = vec![ZERO; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vecs[i * n + new_col] = v[i * n + old_col];
        }
    }
    Ok(EigDecomp {
        eigenvalues,
        eigenvectors: Matrix::from_vec_unchecked(n, n, vecs),
    })
}

/// One complex Jacobi rotation zeroing the (p, q) entry.
///
/// The pivot `a_pq = g·e^{iφ}` is first made real by the phase
/// `diag(1, e^{-iφ})`, then annihilated by a real rotation. The combined
/// 2×2 transform is `J = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]` and the update is
/// `A ← J†AJ`, `V ← VJ`.
fn rotate(a: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Skip rotations too small to change the diagonal in floating point.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[p * n + q] = ZERO;
        a[q * n + p] = ZERO;
        return;
    }
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let e = phase.conj();
    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = e * (-s);
    let j_qq = e * c;

    // A ← A·J (columns p, q)
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * j_pp + akq * j_qp;
        a[k * n + q] = akp * j_pq + akq * j_qq;
    }
    // A ← J†·A (rows p, q)
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[q * n + k] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = C64::new(a[q * n + q].re, 0.0);

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * j_pp + vkq * j_qp;
        v[k * n + q] = vkp * j_pq + vkq * j_qq;
    }
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(a: &Matrix) -> Result<Vec<f64>> {
    Ok(hermitian_eig(a)?.eigenvalues)
}

/// `f(A) = V · diag(f(λ)) · V†` for Hermitian `A` and real `f`.
///
/// A non-finite `f(λ)` at any eigenvalue is reported as a domain error.
pub fn mat_func(a: &Matrix, f: impl Fn(f64) -> f64) -> Result<Matrix> {
    mat_func_complex(a, |x| C64::new(f(x), 0.0))
}

/// Complex-valued variant of [`mat_func`], e.g. `x ↦ e^{−ixt}`.
pub fn mat_func_complex(a: &Matrix, f: impl Fn(f64) -> C64) -> Result<Matrix> {
    let eig = hermitian_eig(a)?;
    for &l in &eig.eigenvalues {
        let y = f(l);
        if !y.re.is_finite() || !y.im.is_finite() {
            return Err(QuditError::Domain(format!(
                "function undefined at eigenvalue {l:e}"
            )));
        }
    }
    Ok(eig.reconstruct_with(f))
}

/// Principal square root of a positive semidefinite matrix; eigenvalues in
/// `[−tol, 0)` are clamped to zero.
pub fn psd_sqrt(a: &Matrix, tol: f64) -> Result<Matrix> {
    let eig = hermitian_eig(a)?;
    if eig.min_eigenvalue() < -tol {
        return Err(QuditError::Positivity(format!(
            "square root of matrix with eigenvalue {:e}",
            eig.min_eigenvalue()
        )));
    }
    Ok(eig.reconstruct_with(|l| C64::new(l.max(0.0).sqrt(), 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::I;

    fn gram_deviation(v: &Matrix) -> f64 {
        (&v.dagger() * v).max_abs_diff(&Matrix::identity(v.cols()))
    }

    #[test]
    fn diagonal_input() {
        let z = Matrix::from_real_diag(&[1.0, -1.0]);
        let e = hermitian_eig(&z).unwrap();
        assert_eq!(e.eigenvalues, vec![-1.0, 1.0]);
    }

    #[test]
    fn sigma_x_eigenvectors_are_minus_and_plus() {
        let x = Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let e = hermitian_eig(&x).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let minus = e.eigenvectors.column_vec(0);
        let plus = e.eigenvectors.column_vec(1);
        // up to phase
        let overlap_minus = (minus[0] * h - minus[1] * h).norm();
        let overlap_plus = (plus[0] * h + plus[1] * h).norm();
        assert!((overlap_minus - 1.0).abs() < 1e-14);
        assert!((overlap_plus - 1.0).abs() < 1e-14);
    }

    #[test]
    fn scalar_matrix() {
        let m = Matrix::identity(2).scale_real(0.5);
        assert_eq!(eigvalsh(&m).unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let m = Matrix::from_rows(&[
            vec![C64::new(2.0, 0.0), C64::new(1.0, -1.0), C64::new(0.0, 0.5)],
            vec![C64::new(1.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.3, 0.2)],
            vec![C64::new(0.0, -0.5), C64::new(0.3, -0.2), C64::new(0.5, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eig(&m).unwrap();
        assert!(e.reconstruct().max_abs_diff(&m) < 1e-13);
        assert!(gram_deviation(&e.eigenvectors) < 1e-13);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(QuditError::Domain(_))));
    }

    #[test]
    fn symmetrizes_small_asymmetry() {
        let mut m = Matrix::from_real_rows(&[&[1.0, 0.5], &[0.5, 1.0]]).unwrap();
        m[(0, 1)] += C64::new(1e-12, 0.0);
        let e = hermitian_eig(&m).unwrap();
        assert!((e.eigenvalues[0] - 0.5).abs() < 1e-11);
    }

    #[test]
    fn mat_func_examples() {
        let z = Matrix::from_real_diag(&[1.0, -1.0]);
        let ez = mat_func(&z, f64::exp).unwrap();
        let e = std::f64::consts::E;
        assert!(ez.max_abs_diff(&Matrix::from_real_diag(&[e, 1.0 / e])) < 1e-14);

        let half = Matrix::identity(2).scale_real(0.5);
        let sq = mat_func(&half, |x| x * x).unwrap();
        assert!(sq.max_abs_diff(&Matrix::identity(2).scale_real(0.25)) < 1e-15);

        let psi = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let pure = Matrix::outer(&psi, &psi);
        let pure_sq = mat_func(&pure, |x| x * x).unwrap();
        assert!(pure_sq.max_abs_diff(&pure) < 1e-13);
    }

    #[test]
    fn mat_func_domain_error() {
        let m = Matrix::from_real_diag(&[0.0, 1.0]);
        assert!(matches!(mat_func(&m, f64::ln), Err(QuditError::Domain(_))));
    }

    #[test]
    fn mat_func_identity_and_commutation() {
        let m = Matrix::from_rows(&[vec![C64::new(1.0, 0.0), I], vec![-I, C64::new(-0.5, 0.0)]])
            .unwrap();
        let same = mat_func(&m, |x| x).unwrap();
        assert!(same.max_abs_diff(&m) < 1e-12);
        let f = mat_func(&m, |x| x.sin()).unwrap();
        let comm = crate::linalg::commutator(&m, &f).unwrap();
        assert!(comm.max_abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = Matrix::from_real_rows(&[&[0.5, 0.25], &[0.25, 0.5]]).unwrap();
        let r = psd_sqrt(&m, 1e-12).unwrap();
        assert!((&r * &r).max_abs_diff(&m) < 1e-14);
    }
}
