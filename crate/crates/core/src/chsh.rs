//! CHSH operator `ĉ = R⊗S + R⊗T + Q⊗S − Q⊗T` with spin observables along
//! unit directions, its expectation values, and the Werner-family scan.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{QuditError, Result};
use crate::generators::pauli;
use crate::linalg::{commutator, kron, Matrix};
use crate::multipartite::ppt_min_eig_matrix;
use crate::quantifiers::concurrence;
use crate::states::{catalog, DensityOp, DimSpec};

/// Tolerance on `|n| = 1` for measurement directions.
pub const UNIT_TOL: f64 = 1e-12;

pub type Direction = [f64; 3];

fn check_unit(n: &Direction, name: &str) -> Result<()> {
    if n.iter().any(|x| !x.is_finite()) {
        return Err(QuditError::Domain(format!(
            "direction {name} is not finite"
        )));
    }
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(QuditError::Domain(format!(
            "direction {name} has norm {norm}, expected 1"
        )));
    }
    Ok(())
}

/// Measurement directions: `R = r·σ` and `Q = q·σ` on the first qubit,
/// `S = s·σ` and `T = t·σ` on the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub r: Direction,
    pub q: Direction,
    pub s: Direction,
    pub t: Direction,
}

impl ChshSettings {
    pub fn new(r: Direction, q: Direction, s: Direction, t: Direction) -> Result<Self> {
        check_unit(&r, "r")?;
        check_unit(&q, "q")?;
        check_unit(&s, "s")?;
        check_unit(&t, "t")?;
        Ok(ChshSettings { r, q, s, t })
    }

    /// `Q = ẑ`, `R = x̂`, `s = (ẑ+x̂)/√2`, `t = (x̂−ẑ)/√2`, which reach
    /// `+2√2` on `φ⁺` (and `−2√2` on the singlet).
    pub fn optimal() -> Self {
        let h = FRAC_1_SQRT_2;
        ChshSettings {
            r: [1.0, 0.0, 0.0],
            q: [0.0, 0.0, 1.0],
            s: [h, 0.0, h],
            t: [h, 0.0, -h],
        }
    }
}

/// `n·σ` for a unit direction `n`.
pub fn spin_observable(n: &Direction) -> Result<Matrix> {
    check_unit(n, "n")?;
    Ok(spin_unchecked(n))
}

fn spin_unchecked(n: &Direction) -> Matrix {
    let [sx, sy, sz] = pauli();
    &(&sx.scale_real(n[0]) + &sy.scale_real(n[1])) + &sz.scale_real(n[2])
}

/// The 4×4 CHSH operator.
pub fn chsh_operator(s: &ChshSettings) -> Matrix {
    let r = spin_unchecked(&s.r);
    let q = spin_unchecked(&s.q);
    let ss = spin_unchecked(&s.s);
    let t = spin_unchecked(&s.t);
    let k = |a: &Matrix, b: &Matrix| kron(a, b).expect("4x4");
    &(&(&k(&r, &ss) + &k(&r, &t)) + &k(&q, &ss)) - &k(&q, &t)
}

/// `max |ĉ² − (4I + [Q,R]⊗[S,T])|`.
pub fn tsirelson_identity_residual(s: &ChshSettings) -> f64 {
    let c = chsh_operator(s);
    let qr = commutator(&spin_unchecked(&s.q), &spin_unchecked(&s.r)).expect("2x2");
    let st = commutator(&spin_unchecked(&s.s), &spin_unchecked(&s.t)).expect("2x2");
    let rhs = &Matrix::identity(4).scale_real(4.0) + &kron(&qr, &st).expect("4x4");
    (&c * &c).max_abs_diff(&rhs)
}

/// `tr(M ĉ)` for any 4×4 matrix `M`.
pub fn chsh_value_matrix(m: &Matrix, s: &ChshSettings) -> Result<f64> {
    if m.shape() != (4, 4) {
        return Err(QuditError::Shape(format!(
            "CHSH needs a 4x4 state, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.trace_product(&chsh_operator(s))?.re)
}

/// `⟨ĉ⟩ = tr(ρ ĉ)` for a two-qubit state.
pub fn chsh_value(rho: &DensityOp, s: &ChshSettings) -> Result<f64> {
    if rho.dims().dims() != [2, 2] {
        return Err(QuditError::Dimension(format!(
            "CHSH needs dims 2,2, got {}",
            rho.dims()
        )));
    }
    chsh_value_matrix(rho.matrix(), s)
}

/// One row of [`chsh_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub x: f64,
    pub chsh: f64,
    pub ppt_min_eig: f64,
    /// `None` where the Werner matrix is not positive (`x < −1/3`).
    pub concurrence: Option<f64>,
}

/// Grid `from, from+step, …, to` (endpoint included when it falls on the grid
/// to within a millionth of a step).
pub fn scan_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step <= 0.0 {
        return Err(QuditError::Domain(
            "scan needs finite bounds and a positive step".into(),
        ));
    }
    if from > to || from < -1.0 || to > 1.0 {
        return Err(QuditError::Domain(format!(
            "scan range [{from}, {to}] must lie in [-1, 1]"
        )));
    }
    let n = ((to - from) / step + 1e-6).floor() as usize;
    Ok((0..=n)
        .map(|i| (from + i as f64 * step).clamp(-1.0, 1.0))
        .collect())
}

/// CHSH value, PPT minimum eigenvalue and concurrence along the Werner family.
pub fn chsh_scan(xs: &[f64], s: &ChshSettings) -> Result<Vec<ScanRow>> {
    let dims = DimSpec::qubits(2)?;
    xs.iter()
        .map(|&x| {
            let m = catalog::werner_matrix(x)?;
            let conc = match catalog::werner(x) {
                Ok(rho) => Some(concurrence(&rho)?),
                Err(_) => None,
            };
            Ok(ScanRow {
                x,
                chsh: chsh_value_matrix(&m, s)?,
                ppt_min_eig: ppt_min_eig_matrix(&m, &dims)?,
                concurrence: conc,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvalsh;
    use crate::states::catalog::Bell;
    use crate::states::dm_from_ket;

    const TSIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;

    #[test]
    fn spin_observable_examples() {
        let [sx, _, sz] = pauli();
        assert_eq!(spin_observable(&[0.0, 0.0, 1.0]).unwrap(), sz);
        assert_eq!(spin_observable(&[1.0, 0.0, 0.0]).unwrap(), sx);
        let h = FRAC_1_SQRT_2;
        let d = spin_observable(&[h, 0.0, h]).unwrap();
        let e = eigvalsh(&d).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-10 && (e[1] - 1.0).abs() < 1e-10);
        assert!((&d * &d).max_abs_diff(&Matrix::identity(2)) < 1e-15);
        assert!(spin_observable(&[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn equal_directions_collapse() {
        let n = [0.0, 0.6, 0.8];
        let s = ChshSettings::new(n, n, n, n).unwrap();
        let r = spin_observable(&n).unwrap();
        let want = kron(&r, &r).unwrap().scale_real(2.0);
        assert!(chsh_operator(&s).max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn optimal_operator_spectrum() {
        let c = chsh_operator(&ChshSettings::optimal());
        assert!(c.hermitian_deviation() == 0.0);
        let e = eigvalsh(&c).unwrap();
        assert!((e[0] + TSIRELSON).abs() < 1e-12);
        assert!((e[3] - TSIRELSON).abs() < 1e-12);
    }

    #[test]
    fn value_examples() {
        let s = ChshSettings::optimal();
        let phi = dm_from_ket(&catalog::bell(Bell::PhiPlus));
        assert!((chsh_value(&phi, &s).unwrap() - TSIRELSON).abs() < 1e-10);
        let mm = DensityOp::maximally_mixed(DimSpec::qubits(2).unwrap());
        assert!(chsh_value(&mm, &s).unwrap().abs() < 1e-15);
        assert!(chsh_value(&DensityOp::maximally_mixed(DimSpec::single(4).unwrap()), &s).is_err());
    }

    #[test]
    fn tsirelson_identity_optimal() {
        assert!(tsirelson_identity_residual(&ChshSettings::optimal()) < 1e-12);
    }

    #[test]
    fn scan_examples() {
        let xs = scan_grid(-1.0, 1.0, 0.01).unwrap();
        assert_eq!(xs.len(), 201);
        assert_eq!(xs[200], 1.0);
        let rows = chsh_scan(&xs, &ChshSettings::optimal()).unwrap();
        let zero = rows.iter().find(|r| r.x.abs() < 1e-12).unwrap();
        assert!(zero.chsh.abs() < 1e-15);
        assert!((rows[200].chsh.abs() - TSIRELSON).abs() < 1e-12);
        assert!(rows[0].concurrence.is_none());
        // |CHSH| = 2√2|x| crosses 2 between grid points around 1/√2
        let first = rows
            .iter()
            .find(|r| r.x > 0.0 && r.chsh.abs() > 2.0)
            .unwrap();
        assert!((first.x - FRAC_1_SQRT_2).abs() <= 0.01);
        assert!(scan_grid(0.5, 0.1, 0.1).is_err());
        assert!(scan_grid(-2.0, 0.0, 0.1).is_err());
        assert!(scan_grid(0.0, 1.0, 0.0).is_err());
    }
}
