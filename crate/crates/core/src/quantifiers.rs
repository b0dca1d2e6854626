//! Purity, von Neumann and entanglement entropy, two-qubit concurrence,
//! p-norm distances and p-norm coherence.

use crate::error::{QuditError, Result};
use crate::generators::pauli;
use crate::linalg::{eigvalsh, hermitian_eig, kron, Matrix, C64};
use crate::multipartite::partial_trace;
use crate::random::{uniform, QRng};
use crate::states::{dephase, qubit_bloch_vector, DensityOp};

/// `tr(ρ²)`.
pub fn purity(rho: &DensityOp) -> f64 {
    rho.purity()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    Two,
    E,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }
}

fn entropy_of(eigs: &[f64], base: LogBase) -> f64 {
    eigs.iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * base.log(l))
        .sum::<f64>()
}

/// `S(ρ) = −Σ λ log λ` with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityOp, base: LogBase) -> Result<f64> {
    Ok(entropy_of(&rho.eigenvalues()?, base))
}

/// Base-2 entropy of the reduced state of subsystem `s` (0-based).
pub fn entanglement_entropy(rho: &DensityOp, s: usize) -> Result<f64> {
    von_neumann_entropy(&partial_trace(rho, &[s])?, LogBase::Two)
}

/// `σy ⊗ σy`.
fn spin_flip() -> Matrix {
    let [_, sy, _] = pauli();
    kron(&sy, &sy).expect("4x4")
}

/// Two-qubit concurrence `max{0, √λ1 − √λ2 − √λ3 − √λ4}`.
///
/// The `λ_i` are the eigenvalues of `ρ ρ̃` with `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
/// The `√λ_i` are taken directly as the singular values of
/// `τ_jk = v_jᵀ (σy⊗σy) v_k`, where `v_j = √p_j e_j` runs over the
/// eigenvectors of `ρ`. Those singular values are the nonnegative
/// eigenvalues of the Hermitian dilation `[[0, τ], [τ†, 0]]`, which keeps
/// them accurate near zero.
pub fn concurrence(rho: &DensityOp) -> Result<f64> {
    Ok(concurrence_details(rho)?.0)
}

fn concurrence_details(rho: &DensityOp) -> Result<(f64, Vec<f64>)> {
    if rho.dims().dims() != [2, 2] {
        return Err(QuditError::Dimension(format!(
            "concurrence needs dims 2,2, got {}",
            rho.dims()
        )));
    }
    let eig = hermitian_eig(rho.matrix())?;
    let v: Vec<Vec<C64>> = (0..4)
        .map(|j| {
            let w = eig.eigenvalues[j].max(0.0).sqrt();
            eig.eigenvectors
                .column_vec(j)
                .into_iter()
                .map(|z| z * w)
                .collect()
        })
        .collect();
    let yy = spin_flip();
    let mut dilation = Matrix::zeros(8, 8);
    for j in 0..4 {
        let yv = yy.apply(&v[j])?;
        for k in 0..4 {
            let t: C64 = v[k].iter().zip(&yv).map(|(a, b)| a * b).sum();
            dilation[(j, 4 + k)] = t;
            dilation[(4 + k, j)] = t.conj();
        }
    }
    let mut sv = eigvalsh(&dilation)?;
    sv.reverse();
    let r: Vec<f64> = sv[..4].iter().map(|x| x.max(0.0)).collect();
    let c = (r[0] - r[1] - r[2] - r[3]).max(0.0);
    Ok((c, r.iter().map(|x| x * x).collect()))
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(QuditError::Domain(format!(
            "p-norm needs finite p >= 1, got {p}"
        )));
    }
    Ok(())
}

/// `(Σ |λ_j(ρ − η)|^p)^{1/p}` over the Hermitian eigenvalues of the difference.
pub fn p_norm_distance(rho: &DensityOp, eta: &DensityOp, p: f64) -> Result<f64> {
    check_p(p)?;
    if rho.dims() != eta.dims() {
        return Err(QuditError::Dimension(format!(
            "distance between dims {} and {}",
            rho.dims(),
            eta.dims()
        )));
    }
    let eigs = eigvalsh(&(rho.matrix() - eta.matrix()))?;
    Ok(eigs
        .iter()
        .map(|l| l.abs().powf(p))
        .sum::<f64>()
        .powf(1.0 / p))
}

/// `d_p(ρ, diag ρ)`.
pub fn p_norm_coherence(rho: &DensityOp, p: f64) -> Result<f64> {
    p_norm_distance(rho, &dephase(rho), p)
}

/// Closed form `2^{(1−p)/p} √(r1² + r2²)` for a qubit `ρ = (I + r·σ)/2`.
pub fn qubit_coherence_closed_form(rho: &DensityOp, p: f64) -> Result<f64> {
    check_p(p)?;
    let r = qubit_bloch_vector(rho)?;
    Ok(2f64.powf((1.0 - p) / p) * (r[0] * r[0] + r[1] * r[1]).sqrt())
}

/// Selector for [`quantify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Purity,
    Entropy { base: LogBase },
    EntanglementEntropy { subsystem: usize },
    Concurrence,
    Coherence { p: f64 },
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Purity => "purity",
            Metric::Entropy { .. } => "entropy",
            Metric::EntanglementEntropy { .. } => "ent-entropy",
            Metric::Concurrence => "concurrence",
            Metric::Coherence { .. } => "coherence",
        }
    }
}

/// A quantifier value with the spectrum it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantifierResult {
    pub name: &'static str,
    pub value: f64,
    /// Eigenvalues behind the value: of `ρ` (purity, entropy), of the reduced
    /// state (entanglement entropy), of `ρρ̃` descending (concurrence), or of
    /// `ρ − diag ρ` (coherence).
    pub eigenvalues: Vec<f64>,
}

pub fn quantify(rho: &DensityOp, metric: Metric) -> Result<QuantifierResult> {
    let (value, eigenvalues) = match metric {
        Metric::Purity => (purity(rho), rho.eigenvalues()?),
        Metric::Entropy { base } => {
            let e = rho.eigenvalues()?;
            (entropy_of(&e, base), e)
        }
        Metric::EntanglementEntropy { subsystem } => {
            let e = partial_trace(rho, &[subsystem])?.eigenvalues()?;
            (entropy_of(&e, LogBase::Two), e)
        }
        Metric::Concurrence => concurrence_details(rho)?,
        Metric::Coherence { p } => {
            let v = p_norm_coherence(rho, p)?;
            (v, eigvalsh(&(rho.matrix() - dephase(rho).matrix()))?)
        }
    };
    Ok(QuantifierResult {
        name: metric.name(),
        value,
        eigenvalues,
    })
}

/// Outcome of [`quantifier_axioms_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub samples: usize,
    /// `C(ρ) ≥ 0` for every sample.
    pub nonnegative: bool,
    /// `C = 0` on diagonal states and `C > 0` on states with coherence.
    pub faithful: bool,
    /// Largest `C(mix) − Σ w C(ρ_i)` over the random mixtures.
    pub max_convexity_excess: f64,
    pub convex: bool,
    /// `C(dephase ρ) = 0 ≤ C(ρ)` for every sample.
    pub dephasing_monotone: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.nonnegative && self.faithful && self.convex && self.dephasing_monotone
    }
}

/// Checks the p-norm coherence against nonnegativity, faithfulness,
/// convexity on random pairwise mixtures and monotonicity under dephasing.
pub fn quantifier_axioms_suite(
    samples: &[DensityOp],
    p: f64,
    rng: &mut QRng,
) -> Result<AxiomReport> {
    let coh: Vec<f64> = samples
        .iter()
        .map(|r| p_norm_coherence(r, p))
        .collect::<Result<_>>()?;
    let nonnegative = coh.iter().all(|&c| c >= 0.0);
    let mut faithful = true;
    let mut dephasing_monotone = true;
    for (r, &c) in samples.iter().zip(&coh) {
        let d = dephase(r);
        let cd = p_norm_coherence(&d, p)?;
        faithful &= cd.abs() <= 1e-12;
        let off = (r.matrix() - d.matrix()).max_abs();
        if off > 1e-8 {
            faithful &= c > 0.0;
        }
        dephasing_monotone &= cd.abs() <= 1e-12 && cd <= c + 1e-12;
    }
    let mut max_excess = f64::NEG_INFINITY;
    if samples.len() >= 2 {
        for _ in 0..samples.len() {
            let i = (uniform(rng) * samples.len() as f64) as usize % samples.len();
            let j = (uniform(rng) * samples.len() as f64) as usize % samples.len();
            if samples[i].dims() != samples[j].dims() {
                continue;
            }
            let w = uniform(rng);
            let mix = DensityOp::mixture(&[(w, &samples[i]), (1.0 - w, &samples[j])])?;
            let lhs = p_norm_coherence(&mix, p)?;
            max_excess = max_excess.max(lhs - (w * coh[i] + (1.0 - w) * coh[j]));
        }
    }
    Ok(AxiomReport {
        samples: samples.len(),
        nonnegative,
        faithful,
        max_convexity_excess: max_excess,
        convex: max_excess <= 1e-9,
        dephasing_monotone,
    })
}
