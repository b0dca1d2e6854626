//! Seeded random states, unitaries and directions.

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::SplitMix64;

use crate::error::Result;
use crate::linalg::{Matrix, C64};
use crate::states::{DensityOp, DimSpec, Ket};

/// Generator used for all seeded sampling.
pub type QRng = SplitMix64;

pub fn seeded(seed: u64) -> QRng {
    SplitMix64::seed_from_u64(seed)
}

/// Uniform in `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut QRng) -> f64 {
    rng.random::<f64>()
}

/// Standard complex Gaussian (independent N(0,1) real and imaginary parts).
pub fn complex_gaussian(rng: &mut QRng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_matrix(rng: &mut QRng, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    Matrix::from_vec_unchecked(rows, cols, data)
}

/// `G G† / tr(G G†)` with `G` square Ginibre; full rank almost surely.
pub fn random_density(rng: &mut QRng, dims: &DimSpec) -> DensityOp {
    let n = dims.total();
    let g = gaussian_matrix(rng, n, n);
    let w = &g * &g.dagger();
    let tr = w.trace().expect("square").re;
    DensityOp::from_trusted(w.scale_real(1.0 / tr).hermitian_part(), dims.clone())
}

/// Haar-distributed pure state.
pub fn random_ket(rng: &mut QRng, dims: &DimSpec) -> Ket {
    let amps: Vec<C64> = (0..dims.total()).map(|_| complex_gaussian(rng)).collect();
    Ket::normalized(amps, dims.clone()).expect("nonzero with probability 1")
}

/// Unitary from Gram–Schmidt on Gaussian columns, with the phase of each
/// diagonal entry of `R` absorbed so the distribution is Haar.
pub fn random_unitary(rng: &mut QRng, n: usize) -> Matrix {
    let g = gaussian_matrix(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column_vec(j);
        for _ in 0..2 {
            for q in &cols {
                let p: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= p * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = Matrix::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, z) in c.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

/// Random Hermitian matrix `(G + G†)/2`.
pub fn random_hermitian(rng: &mut QRng, n: usize) -> Matrix {
    gaussian_matrix(rng, n, n).hermitian_part()
}

/// Uniform direction on the unit sphere.
pub fn random_unit_vector3(rng: &mut QRng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Random Hopf angles: `θ` uniform in `[0, π]`, `φ` uniform in `[0, 2π)`.
pub fn random_angles(rng: &mut QRng) -> (f64, f64) {
    let t = std::f64::consts::PI * uniform(rng);
    let p = 2.0 * std::f64::consts::PI * uniform(rng);
    (t, p)
}

/// Random orthonormal basis of `C^n` as the columns of a unitary.
pub fn random_basis(rng: &mut QRng, n: usize) -> Result<Vec<Vec<C64>>> {
    let u = random_unitary(rng, n);
    Ok((0..n).map(|j| u.column_vec(j)).collect())
}
