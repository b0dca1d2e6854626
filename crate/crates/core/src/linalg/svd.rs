use super::eigen::hermitian_eig;
use super::matrix::{Matrix, C64, ZERO};
use crate::error::Result;

/// Thin singular value decomposition `A = U · diag(s) · V†`.
///
/// For an `m×n` input, `u` is `m×k` and `v` is `n×k` with `k = min(m, n)`;
/// both have orthonormal columns and `singular_values` are descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v: Matrix,
}

impl Svd {
    pub fn reconstruct(&self) -> Matrix {
        let (m, k) = self.u.shape();
        let n = self.v.rows();
        let mut out = Matrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                let mut acc = ZERO;
                for c in 0..k {
                    acc += self.u.get(i, c) * self.singular_values[c] * self.v.get(j, c).conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// Number of singular values strictly above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.singular_values
            .iter()
            .filter(|&&s| s > threshold)
            .count()
    }
}

/// SVD via the Hermitian eigendecomposition of `A†A` (or `AA†` for wide
/// inputs) followed by column recovery `u_k = A v_k / ‖A v_k‖`.
///
/// Singular values are taken as `‖A v_k‖` rather than `√λ_k`, which keeps
/// small values accurate. Columns of `U` belonging to vanishing singular
/// values are completed by Gram–Schmidt against the standard basis.
pub fn svd(a: &Matrix) -> Result<Svd> {
    let (m, n) = a.shape();
    if m < n {
        let t = svd(&a.dagger())?;
        return Ok(Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        });
    }
    let gram = &a.dagger() * a;
    let eig = hermitian_eig(&gram)?;

    // (singular value, right vector, A·v) sorted by descending value
    let mut triples: Vec<(f64, Vec<C64>, Vec<C64>)> = (0..n)
        .map(|k| {
            let vk = eig.eigenvectors.column_vec(k);
            let avk = a.apply(&vk).expect("conforming");
            let s = avk.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            (s, vk, avk)
        })
        .collect();
    triples.sort_by(|x, y| y.0.total_cmp(&x.0));

    let scale = triples.first().map_or(0.0, |t| t.0).max(f64::MIN_POSITIVE);
    let cutoff = 1e-14 * scale;
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut singular_values = Vec::with_capacity(n);
    let mut v = Matrix::zeros(n, n);
    for (c, (s, vk, avk)) in triples.into_iter().enumerate() {
        for (i, z) in vk.iter().enumerate() {
            v[(i, c)] = *z;
        }
        if s > cutoff {
            u_cols.push(avk.iter().map(|z| z / s).collect());
            singular_values.push(s);
        } else {
            u_cols.push(complete_orthonormal(&u_cols, m));
            singular_values.push(s);
        }
    }
    let mut u = Matrix::zeros(m, n);
    for (c, col) in u_cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, c)] = *z;
        }
    }
    Ok(Svd {
        u,
        singular_values,
        v,
    })
}

/// A unit vector orthogonal to every column in `basis`.
fn complete_orthonormal(basis: &[Vec<C64>], m: usize) -> Vec<C64> {
    let mut best: Option<(f64, Vec<C64>)> = None;
    for e in 0..m {
        let mut w = vec![ZERO; m];
        w[e] = C64::new(1.0, 0.0);
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for b in basis {
                let proj: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= proj * bi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
            best = Some((norm, w));
        }
        if norm > 0.5 {
            break;
        }
    }
    let (norm, w) = best.expect("m > 0");
    w.into_iter().map(|z| z / norm).collect()
}
