//! Unitary evolution, propagators, expectation values, measurements and the
//! Robertson and QND checks. Units have ħ = 1.

use crate::error::{QuditError, Result};
use crate::linalg::{commutator, mat_func_complex, Matrix, C64};
use crate::states::{DensityOp, DimSpec, Ket};

/// Tolerance on `U†U = I`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance on `A = A†` for observables and Hamiltonians.
pub const OBSERVABLE_TOL: f64 = 1e-10;
/// Tolerance on `Σ M†M = I`.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Outcomes less likely than this get no post-measurement state.
pub const ZERO_PROBABILITY: f64 = 1e-14;
/// Tolerance of the QND commutator test.
pub const QND_TOL: f64 = 1e-10;
/// Finite-difference step of [`liouville_residual`].
pub const LIOUVILLE_STEP: f64 = 1e-5;

fn check_unitary(u: &Matrix) -> Result<()> {
    let dev = u.unitary_deviation();
    if dev > UNITARY_TOL {
        return Err(QuditError::Unitarity(format!(
            "max |U^dagger U - I| = {dev:e}"
        )));
    }
    Ok(())
}

fn check_observable(a: &Matrix, n: usize) -> Result<()> {
    if a.shape() != (n, n) {
        return Err(QuditError::Shape(format!(
            "operator is {}x{}, state dimension is {n}",
            a.rows(),
            a.cols()
        )));
    }
    let dev = a.hermitian_deviation();
    if dev > OBSERVABLE_TOL {
        return Err(QuditError::Hermiticity(format!(
            "max |A - A^dagger| = {dev:e}"
        )));
    }
    Ok(())
}

/// States that evolve under a unitary.
pub trait Evolve: Sized {
    fn evolve(&self, u: &Matrix) -> Result<Self>;
}

impl Evolve for Ket {
    fn evolve(&self, u: &Matrix) -> Result<Self> {
        check_unitary(u)?;
        let amps = u.apply(self.amplitudes())?;
        Ok(Ket::from_trusted(amps, self.dims().clone()))
    }
}

impl Evolve for DensityOp {
    fn evolve(&self, u: &Matrix) -> Result<Self> {
        check_unitary(u)?;
        let m = u.matmul(self.matrix())?.matmul(&u.dagger())?;
        Ok(DensityOp::from_trusted(
            m.hermitian_part(),
            self.dims().clone(),
        ))
    }
}

/// `|ψ⟩ → U|ψ⟩` or `ρ → UρU†`.
pub fn evolve_unitary<S: Evolve>(state: &S, u: &Matrix) -> Result<S> {
    state.evolve(u)
}

/// `exp(−iHt)` for Hermitian `H`.
pub fn propagator(h: &Matrix, t: f64) -> Result<Matrix> {
    if !h.is_square() {
        return Err(QuditError::Shape("Hamiltonian must be square".into()));
    }
    check_observable(h, h.rows())?;
    if !t.is_finite() {
        return Err(QuditError::Domain("non-finite time".into()));
    }
    mat_func_complex(h, |e| C64::from_polar(1.0, -e * t))
}

/// `exp(−i ∫H dt)` for a Hamiltonian family that commutes with itself at
/// all times; the caller supplies the integrated Hermitian exponent.
pub fn propagator_commuting(integrated_h: &Matrix) -> Result<Matrix> {
    propagator(integrated_h, 1.0)
}

/// `tr(ρ O)` for Hermitian `O`.
pub fn expectation(rho: &DensityOp, obs: &Matrix) -> Result<f64> {
    check_observable(obs, rho.dim())?;
    let v = rho.matrix().trace_product(obs)?;
    if v.im.abs() > 1e-10 {
        return Err(QuditError::Numerical(format!(
            "expectation has imaginary residue {:e}",
            v.im
        )));
    }
    Ok(v.re)
}

/// `⟨O²⟩ − ⟨O⟩²`.
pub fn variance(rho: &DensityOp, obs: &Matrix) -> Result<f64> {
    let m1 = expectation(rho, obs)?;
    let m2 = expectation(rho, &(obs * obs).hermitian_part())?;
    Ok(m2 - m1 * m1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobertsonReport {
    /// `σ_A σ_B`.
    pub lhs: f64,
    /// `|⟨[A,B]⟩|/2`.
    pub rhs: f64,
    pub holds: bool,
}

/// Robertson bound `σ_A σ_B ≥ |⟨[A,B]⟩|/2`.
pub fn robertson_check(rho: &DensityOp, a: &Matrix, b: &Matrix) -> Result<RobertsonReport> {
    let va = variance(rho, a)?.max(0.0);
    let vb = variance(rho, b)?.max(0.0);
    let lhs = va.sqrt() * vb.sqrt();
    let comm = commutator(a, b)?;
    // [A,B] is anti-Hermitian, so its expectation is imaginary
    let rhs = rho.matrix().trace_product(&comm)?.norm() / 2.0;
    Ok(RobertsonReport {
        lhs,
        rhs,
        holds: lhs >= rhs - 1e-10,
    })
}

/// A complete collection of measurement operators `{M_m}`.
#[derive(Debug, Clone)]
pub struct MeasurementSet {
    operators: Vec<Matrix>,
    labels: Vec<String>,
    projective: bool,
}

impl MeasurementSet {
    /// Checks `Σ M_m† M_m = I` within [`COMPLETENESS_TOL`].
    pub fn new(operators: Vec<Matrix>, labels: Vec<String>) -> Result<Self> {
        if operators.is_empty() || operators.len() != labels.len() {
            return Err(QuditError::Domain(
                "measurement set needs one label per operator and at least one operator".into(),
            ));
        }
        let n = operators[0].rows();
        let mut sum = Matrix::zeros(n, n);
        for m in &operators {
            if m.shape() != (n, n) {
                return Err(QuditError::Shape(
                    "measurement operators differ in shape".into(),
                ));
            }
            sum = &sum + &(&m.dagger() * m);
        }
        let dev = sum.max_abs_diff(&Matrix::identity(n));
        if dev > COMPLETENESS_TOL {
            return Err(QuditError::Domain(format!(
                "measurement operators are not complete (max |sum M^dagger M - I| = {dev:e})"
            )));
        }
        let projective = operators.iter().all(|m| {
            m.is_hermitian(COMPLETENESS_TOL) && (m * m).max_abs_diff(m) <= COMPLETENESS_TOL
        });
        Ok(MeasurementSet {
            operators,
            labels,
            projective,
        })
    }

    /// Projectors onto the columns of `basis`, which must be orthonormal.
    pub fn from_basis(basis: &Matrix) -> Result<Self> {
        let n = basis.rows();
        let ops: Vec<Matrix> = (0..basis.cols())
            .map(|j| {
                let c = basis.column_vec(j);
                Matrix::outer(&c, &c)
            })
            .collect();
        let labels = (0..basis.cols()).map(|j| j.to_string()).collect();
        let set = MeasurementSet::new(ops, labels)?;
        if basis.cols() != n || !set.projective {
            return Err(QuditError::Domain(
                "basis columns are not orthonormal".into(),
            ));
        }
        Ok(set)
    }

    /// Computational-basis measurement over `dims`, labelled by digit strings.
    pub fn computational(dims: &DimSpec) -> Self {
        let n = dims.total();
        let ops = (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(n, n);
                m[(i, i)] = C64::new(1.0, 0.0);
                m
            })
            .collect();
        let labels = (0..n)
            .map(|i| {
                dims.digits(i)
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<String>()
            })
            .collect();
        MeasurementSet {
            operators: ops,
            labels,
            projective: true,
        }
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.operators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    fn dim(&self) -> usize {
        self.operators[0].rows()
    }
}

/// One outcome of a measurement.
#[derive(Debug, Clone)]
pub struct MeasurementRecord<S> {
    pub label: String,
    pub probability: f64,
    /// Renormalized post-measurement state; `None` for outcomes with
    /// probability below [`ZERO_PROBABILITY`].
    pub post_state: Option<S>,
}

/// States that can be measured with a [`MeasurementSet`].
pub trait Measure: Sized {
    fn measure(&self, set: &MeasurementSet) -> Result<Vec<MeasurementRecord<Self>>>;
}

impl Measure for Ket {
    fn measure(&self, set: &MeasurementSet) -> Result<Vec<MeasurementRecord<Self>>> {
        if set.dim() != self.dim() {
            return Err(QuditError::Shape(
                "measurement and state dimensions differ".into(),
            ));
        }
        let mut out = Vec::with_capacity(set.operators.len());
        for (m, label) in set.operators.iter().zip(&set.labels) {
            let v = m.apply(self.amplitudes())?;
            let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            let post = (p >= ZERO_PROBABILITY).then(|| {
                let s = p.sqrt();
                Ket::from_trusted(v.iter().map(|z| z / s).collect(), self.dims().clone())
            });
            out.push(MeasurementRecord {
                label: label.clone(),
                probability: p,
                post_state: post,
            });
        }
        Ok(out)
    }
}

impl Measure for DensityOp {
    fn measure(&self, set: &MeasurementSet) -> Result<Vec<MeasurementRecord<Self>>> {
        if set.dim() != self.dim() {
            return Err(QuditError::Shape(
                "measurement and state dimensions differ".into(),
            ));
        }
        let mut out = Vec::with_capacity(set.operators.len());
        for (m, label) in set.operators.iter().zip(&set.labels) {
            let unnorm = &(m * self.matrix()) * &m.dagger();
            let p = unnorm.trace()?.re;
            let post = (p >= ZERO_PROBABILITY).then(|| {
                DensityOp::from_trusted(
                    unnorm.scale_real(1.0 / p).hermitian_part(),
                    self.dims().clone(),
                )
            });
            out.push(MeasurementRecord {
                label: label.clone(),
                probability: if p < ZERO_PROBABILITY { p.max(0.0) } else { p },
                post_state: post,
            });
        }
        Ok(out)
    }
}

/// Born-rule measurement with a projective set.
pub fn projective_measure<S: Measure>(
    state: &S,
    set: &MeasurementSet,
) -> Result<Vec<MeasurementRecord<S>>> {
    if !set.is_projective() {
        return Err(QuditError::Domain(
            "measurement set is not projective".into(),
        ));
    }
    state.measure(set)
}

/// `p_m = tr(M_m† M_m ρ)`, `ρ_m = M_m ρ M_m† / p_m`.
pub fn general_measure(
    rho: &DensityOp,
    set: &MeasurementSet,
) -> Result<Vec<MeasurementRecord<DensityOp>>> {
    rho.measure(set)
}

/// True iff `max |[O, H]| ≤ 1e−10`, the condition for `O` to be measurable
/// repeatedly without disturbance under `H`.
pub fn qnd_check(obs: &Matrix, hamiltonian: &Matrix) -> Result<bool> {
    Ok(commutator(obs, hamiltonian)?.max_abs() <= QND_TOL)
}

/// Max-entry gap between the central difference of `ρ(t) = Uρ(0)U†` at
/// `t = 0` and `−i[H, ρ(0)]`.
pub fn liouville_residual(h: &Matrix, rho0: &DensityOp) -> Result<f64> {
    let eps = LIOUVILLE_STEP;
    let fwd = rho0.evolve(&propagator(h, eps)?)?;
    let bwd = rho0.evolve(&propagator(h, -eps)?)?;
    let deriv = (fwd.matrix() - bwd.matrix()).scale_real(1.0 / (2.0 * eps));
    let rhs = commutator(h, rho0.matrix())?.scale(C64::new(0.0, -1.0));
    Ok(deriv.max_abs_diff(&rhs))
}
