//! Generalized Gell-Mann (GGM) generators of SU(d).
//!
//! Indices `j`, `k`, `l` passed to the constructors are 1-based basis labels,
//! so `|k⟩` is the k-th computational basis vector counting from one.

use std::fmt;

use serde::Serialize;

use crate::error::{QuditError, Result};
use crate::linalg::{anticommutator, check_dimension, commutator, Matrix, C64};

/// Largest `d` accepted by [`full_basis`].
pub const MAX_BASIS_DIM: usize = 16;
/// Largest `d` accepted by [`structure_constants`].
pub const MAX_STRUCTURE_DIM: usize = 6;

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(QuditError::Dimension(format!(
            "subsystem dimension must be >= 2, got {d}"
        )));
    }
    check_dimension(d)
}

/// Diagonal generator `√(2/(j(j+1))) (Σ_{k≤j} |k⟩⟨k| − j |j+1⟩⟨j+1|)`.
pub fn ggm_diagonal(d: usize, j: usize) -> Result<Matrix> {
    check_d(d)?;
    if j == 0 || j >= d {
        return Err(QuditError::Index(format!(
            "diagonal index {j} outside 1..={}",
            d - 1
        )));
    }
    let norm = (2.0 / (j * (j + 1)) as f64).sqrt();
    let mut diag = vec![0.0; d];
    for x in diag.iter_mut().take(j) {
        *x = norm;
    }
    diag[j] = -(j as f64) * norm;
    Ok(Matrix::from_real_diag(&diag))
}

fn check_pair(d: usize, k: usize, l: usize) -> Result<()> {
    check_d(d)?;
    if k == 0 || k >= l || l > d {
        return Err(QuditError::Index(format!(
            "pair ({k},{l}) must satisfy 1 <= k < l <= {d}"
        )));
    }
    Ok(())
}

/// Symmetric generator `|k⟩⟨l| + |l⟩⟨k|`.
pub fn ggm_symmetric(d: usize, k: usize, l: usize) -> Result<Matrix> {
    check_pair(d, k, l)?;
    let mut m = Matrix::zeros(d, d);
    m[(k - 1, l - 1)] = C64::new(1.0, 0.0);
    m[(l - 1, k - 1)] = C64::new(1.0, 0.0);
    Ok(m)
}

/// Antisymmetric generator `−i(|k⟩⟨l| − |l⟩⟨k|)`.
pub fn ggm_antisymmetric(d: usize, k: usize, l: usize) -> Result<Matrix> {
    check_pair(d, k, l)?;
    let mut m = Matrix::zeros(d, d);
    m[(k - 1, l - 1)] = C64::new(0.0, -1.0);
    m[(l - 1, k - 1)] = C64::new(0.0, 1.0);
    Ok(m)
}

/// Label of one element of a [`GeneratorBasis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorKind {
    Identity,
    Diagonal { j: usize },
    Symmetric { k: usize, l: usize },
    Antisymmetric { k: usize, l: usize },
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Identity => write!(f, "I"),
            GeneratorKind::Diagonal { j } => write!(f, "D{j}"),
            GeneratorKind::Symmetric { k, l } => write!(f, "S{k}{l}"),
            GeneratorKind::Antisymmetric { k, l } => write!(f, "A{k}{l}"),
        }
    }
}

/// Identity plus the `d²−1` GGM generators of SU(d).
///
/// `flat` is ordered: identity, diagonal (ascending `j`), symmetric
/// (lexicographic `(k,l)`), antisymmetric (lexicographic `(k,l)`). This order
/// defines the per-site index `0..d²` used by Bloch coefficients.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    dim: usize,
    labels: Vec<GeneratorKind>,
    flat: Vec<Matrix>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.flat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn flat(&self) -> &[Matrix] {
        &self.flat
    }

    pub fn labels(&self) -> &[GeneratorKind] {
        &self.labels
    }

    pub fn get(&self, index: usize) -> Option<&Matrix> {
        self.flat.get(index)
    }

    pub fn identity(&self) -> &Matrix {
        &self.flat[0]
    }

    pub fn diagonal(&self) -> &[Matrix] {
        &self.flat[1..self.dim]
    }

    pub fn symmetric(&self) -> &[Matrix] {
        let p = self.dim * (self.dim - 1) / 2;
        &self.flat[self.dim..self.dim + p]
    }

    pub fn antisymmetric(&self) -> &[Matrix] {
        let p = self.dim * (self.dim - 1) / 2;
        &self.flat[self.dim + p..]
    }

    /// Position in `flat` of a label.
    pub fn index_of(&self, kind: GeneratorKind) -> Option<usize> {
        self.labels.iter().position(|&k| k == kind)
    }

    /// Flat indices of the non-identity generators in the textbook order:
    /// for `l = 2..=d`, the pairs `S(k,l), A(k,l)` for `k < l`, then `D(l−1)`.
    ///
    /// For `d = 2` this is `σx, σy, σz`; for `d = 3` it is `λ1..λ8`.
    pub fn conventional_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len() - 1);
        for l in 2..=self.dim {
            for k in 1..l {
                out.push(
                    self.index_of(GeneratorKind::Symmetric { k, l })
                        .expect("present"),
                );
                out.push(
                    self.index_of(GeneratorKind::Antisymmetric { k, l })
                        .expect("present"),
                );
            }
            out.push(
                self.index_of(GeneratorKind::Diagonal { j: l - 1 })
                    .expect("present"),
            );
        }
        out
    }

    /// Non-identity generators in [`conventional_order`](Self::conventional_order).
    pub fn conventional(&self) -> Vec<&Matrix> {
        self.conventional_order()
            .into_iter()
            .map(|i| &self.flat[i])
            .collect()
    }
}

/// The full GGM basis for `2 ≤ d ≤ 16`.
pub fn full_basis(d: usize) -> Result<GeneratorBasis> {
    if !(2..=MAX_BASIS_DIM).contains(&d) {
        return Err(QuditError::Dimension(format!(
            "basis dimension must lie in 2..={MAX_BASIS_DIM}, got {d}"
        )));
    }
    let mut labels = vec![GeneratorKind::Identity];
    let mut flat = vec![Matrix::identity(d)];
    for j in 1..d {
        labels.push(GeneratorKind::Diagonal { j });
        flat.push(ggm_diagonal(d, j)?);
    }
    for k in 1..d {
        for l in k + 1..=d {
            labels.push(GeneratorKind::Symmetric { k, l });
            flat.push(ggm_symmetric(d, k, l)?);
        }
    }
    for k in 1..d {
        for l in k + 1..=d {
            labels.push(GeneratorKind::Antisymmetric { k, l });
            flat.push(ggm_antisymmetric(d, k, l)?);
        }
    }
    Ok(GeneratorBasis {
        dim: d,
        labels,
        flat,
    })
}

/// Pauli matrices `σx, σy, σz`.
pub fn pauli() -> [Matrix; 3] {
    let b = full_basis(2).expect("d = 2");
    let c = b.conventional_order();
    [
        b.flat[c[0]].clone(),
        b.flat[c[1]].clone(),
        b.flat[c[2]].clone(),
    ]
}

/// Gell-Mann matrices `λ1..λ8`.
pub fn gell_mann() -> Vec<Matrix> {
    full_basis(3)
        .expect("d = 3")
        .conventional()
        .into_iter()
        .cloned()
        .collect()
}

/// Dense rank-3 real tensor indexed `[j][k][l]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    fn zeros(n: usize) -> Self {
        Tensor3 {
            n,
            data: vec![0.0; n * n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize, l: usize) -> f64 {
        self.data[(j * self.n + k) * self.n + l]
    }

    fn set(&mut self, j: usize, k: usize, l: usize, v: f64) {
        self.data[(j * self.n + k) * self.n + l] = v;
    }

    /// Largest deviation from total antisymmetry under index permutation.
    pub fn antisymmetry_defect(&self) -> f64 {
        self.permutation_defect(-1.0)
    }

    /// Largest deviation from total symmetry under index permutation.
    pub fn symmetry_defect(&self) -> f64 {
        self.permutation_defect(1.0)
    }

    fn permutation_defect(&self, sign: f64) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = self.get(j, k, l);
                    worst = worst
                        .max((self.get(k, j, l) - sign * v).abs())
                        .max((self.get(j, l, k) - sign * v).abs());
                }
            }
        }
        worst
    }
}

/// Structure constants of su(d) with respect to a list of generators.
///
/// `f[j][k][l] = tr([Γj,Γk]Γl)/(4i)` and `g[j][k][l] = tr({Γj,Γk}Γl)/4`,
/// so that `[Γj,Γk] = 2i Σ f Γl` and `{Γj,Γk} = (4/d)δ I + 2 Σ g Γl`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub f: Tensor3,
    pub g: Tensor3,
    /// Largest discarded imaginary part of `f` and `g` over all entries.
    pub imaginary_residue: f64,
}

/// Structure constants in the conventional generator order (0-based, so
/// `f.get(0, 1, 2)` is `f_123`). Valid for `2 ≤ d ≤ 6`.
pub fn structure_constants(d: usize) -> Result<StructureConstants> {
    if !(2..=MAX_STRUCTURE_DIM).contains(&d) {
        return Err(QuditError::Dimension(format!(
            "structure constants available for 2..={MAX_STRUCTURE_DIM}, got {d}"
        )));
    }
    let basis = full_basis(d)?;
    structure_constants_of(&basis.conventional())
}

/// Structure constants of an arbitrary list of generators, computed by traces.
pub fn structure_constants_of(gens: &[&Matrix]) -> Result<StructureConstants> {
    let n = gens.len();
    let mut f = Tensor3::zeros(n);
    let mut g = Tensor3::zeros(n);
    let mut residue = 0.0f64;
    let four_i = C64::new(0.0, 4.0);
    for j in 0..n {
        for k in 0..n {
            let comm = commutator(gens[j], gens[k])?;
            let anti = anticommutator(gens[j], gens[k])?;
            for (l, gl) in gens.iter().enumerate() {
                let fv = comm.trace_product(gl)? / four_i;
                let gv = anti.trace_product(gl)? / 4.0;
                residue = residue.max(fv.im.abs()).max(gv.im.abs());
                f.set(j, k, l, fv.re);
                g.set(j, k, l, gv.re);
            }
        }
    }
    Ok(StructureConstants {
        f,
        g,
        imaginary_residue: residue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(rows: &[&[f64]]) -> Matrix {
        Matrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn qubit_specializations() {
        let sz = r(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let sx = r(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let sy = Matrix::from_rows(&[
            vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(ggm_diagonal(2, 1).unwrap(), sz);
        assert_eq!(ggm_symmetric(2, 1, 2).unwrap(), sx);
        assert_eq!(ggm_antisymmetric(2, 1, 2).unwrap(), sy);
        let b = full_basis(2).unwrap();
        assert_eq!(
            b.flat(),
            &[Matrix::identity(2), sz.clone(), sx.clone(), sy.clone()]
        );
        assert_eq!(pauli(), [sx, sy, sz]);
    }

    #[test]
    fn lambda8_and_lambda4() {
        let s = 1.0 / 3f64.sqrt();
        let l8 = ggm_diagonal(3, 2).unwrap();
        assert!(l8.max_abs_diff(&Matrix::from_real_diag(&[s, s, -2.0 * s])) < 1e-15);
        let l4 = r(&[&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]);
        assert_eq!(ggm_symmetric(3, 1, 3).unwrap(), l4);
        let gm = gell_mann();
        assert_eq!(gm[3], l4);
        assert_eq!(gm[7], l8);
        assert_eq!(gm[2], ggm_diagonal(3, 1).unwrap());
    }

    #[test]
    fn index_errors() {
        assert!(matches!(ggm_diagonal(3, 0), Err(QuditError::Index(_))));
        assert!(matches!(ggm_diagonal(3, 3), Err(QuditError::Index(_))));
        assert!(matches!(ggm_symmetric(3, 2, 2), Err(QuditError::Index(_))));
        assert!(matches!(
            ggm_antisymmetric(3, 3, 1),
            Err(QuditError::Index(_))
        ));
        assert!(matches!(ggm_symmetric(3, 1, 4), Err(QuditError::Index(_))));
        assert!(full_basis(1).is_err());
        assert!(full_basis(17).is_err());
        assert!(structure_constants(7).is_err());
    }

    #[test]
    fn basis_invariants() {
        for d in 2..=5 {
            let b = full_basis(d).unwrap();
            assert_eq!(b.len(), d * d);
            assert_eq!(b.diagonal().len(), d - 1);
            assert_eq!(b.symmetric().len(), d * (d - 1) / 2);
            assert_eq!(b.antisymmetric().len(), d * (d - 1) / 2);
            for g in &b.flat()[1..] {
                assert!(g.trace().unwrap().norm() < 1e-15);
                assert!(g.hermitian_deviation() == 0.0);
            }
            for s in b.symmetric() {
                assert!(s.data().iter().all(|z| z.im == 0.0));
            }
            for a in b.antisymmetric() {
                assert!(a.data().iter().all(|z| z.re == 0.0));
            }
            for j in 1..d * d {
                for k in 1..d * d {
                    let t = b.flat()[j].trace_product(&b.flat()[k]).unwrap();
                    let want = if j == k { 2.0 } else { 0.0 };
                    assert!((t - want).norm() < 1e-14, "d={d} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn su2_constants_are_levi_civita() {
        let sc = structure_constants(2).unwrap();
        let eps = |j: usize, k: usize, l: usize| -> f64 {
            if j == k || k == l || j == l {
                0.0
            } else if (j, k, l) == (0, 1, 2) || (j, k, l) == (1, 2, 0) || (j, k, l) == (2, 0, 1) {
                1.0
            } else {
                -1.0
            }
        };
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    assert!((sc.f.get(j, k, l) - eps(j, k, l)).abs() < 1e-15);
                    assert!(sc.g.get(j, k, l).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn su3_constants_from_traces() {
        let sc = structure_constants(3).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let s3 = 1.0 / 3f64.sqrt();
        let f = |a: usize, b: usize, c: usize| sc.f.get(a - 1, b - 1, c - 1);
        let g = |a: usize, b: usize, c: usize| sc.g.get(a - 1, b - 1, c - 1);
        assert!((f(1, 2, 3) - 1.0).abs() < 1e-12);
        assert!((f(4, 5, 8) - h).abs() < 1e-12);
        assert!((f(6, 7, 8) - h).abs() < 1e-12);
        assert!((f(1, 4, 7) - 0.5).abs() < 1e-12);
        assert!((g(1, 1, 8) - s3).abs() < 1e-12);
        assert!((g(8, 8, 8) + s3).abs() < 1e-12);
        assert!((g(3, 4, 4) - 0.5).abs() < 1e-12);
        assert!((g(3, 6, 6) + 0.5).abs() < 1e-12);
        assert!(sc.imaginary_residue < 1e-12);
    }

    #[test]
    fn structure_tensor_symmetries() {
        for d in 2..=5 {
            let sc = structure_constants(d).unwrap();
            assert!(sc.f.antisymmetry_defect() < 1e-12);
            assert!(sc.g.symmetry_defect() < 1e-12);
            assert!(sc.imaginary_residue < 1e-12);
        }
    }

    #[test]
    fn commutator_expands_in_basis() {
        let b = full_basis(3).unwrap();
        let gens = b.conventional();
        let sc = structure_constants(3).unwrap();
        for j in 0..8 {
            for k in 0..8 {
                let lhs = commutator(gens[j], gens[k]).unwrap();
                let mut rhs = Matrix::zeros(3, 3);
                for (l, g) in gens.iter().enumerate() {
                    rhs = &rhs + &g.scale(C64::new(0.0, 2.0 * sc.f.get(j, k, l)));
                }
                assert!(lhs.max_abs_diff(&rhs) < 1e-14);
            }
        }
    }
}
