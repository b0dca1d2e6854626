//! Three-qubit statevector simulator for single-qubit teleportation.
//!
//! Qubit `q0` (the payload) is the leftmost tensor factor, `q1` is Alice's
//! half of the Bell pair and `q2` is Bob's. A branch `(a, b)` is the pair of
//! measured bits of `q0` and `q1`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use crate::error::{QuditError, Result};
use crate::linalg::{Matrix, C64};
use crate::multipartite::partial_trace;
use crate::random::{seeded, uniform};
use crate::states::{DensityOp, DimSpec, Ket, KET_NORM_TOL};

/// Fidelity below `1 − FIDELITY_TOL` counts as a failed teleportation.
pub const FIDELITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
    Cnot,
    /// `e^{iα} exp(−iθ n·σ/2)`.
    U {
        alpha: f64,
        theta: f64,
        n: [f64; 3],
    },
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::I => write!(f, "I"),
            GateKind::X => write!(f, "X"),
            GateKind::Y => write!(f, "Y"),
            GateKind::Z => write!(f, "Z"),
            GateKind::H => write!(f, "H"),
            GateKind::S => write!(f, "S"),
            GateKind::T => write!(f, "T"),
            GateKind::Cnot => write!(f, "CNOT"),
            GateKind::U { alpha, theta, n } => {
                write!(f, "U({alpha},{theta},[{},{},{}])", n[0], n[1], n[2])
            }
        }
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A gate bound to its qubits: one target for single-qubit kinds,
/// `[control, target]` for CNOT.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    qubits: Vec<usize>,
}

impl Gate {
    pub fn single(kind: GateKind, target: usize) -> Result<Self> {
        if kind == GateKind::Cnot {
            return Err(QuditError::Domain(
                "CNOT needs a control and a target".into(),
            ));
        }
        if let GateKind::U { n, alpha, theta } = kind {
            check_axis(&n)?;
            if !alpha.is_finite() || !theta.is_finite() {
                return Err(QuditError::Domain("non-finite gate angle".into()));
            }
        }
        Ok(Gate {
            kind,
            qubits: vec![target],
        })
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        if control == target {
            return Err(QuditError::Index("CNOT control equals target".into()));
        }
        Ok(Gate {
            kind: GateKind::Cnot,
            qubits: vec![control, target],
        })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    /// The 2×2 matrix (4×4 for CNOT, control on the left factor).
    pub fn matrix(&self) -> Matrix {
        gate_matrix(self.kind)
    }
}

/// Matrix of a gate kind.
pub fn gate_matrix(kind: GateKind) -> Matrix {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let h = FRAC_1_SQRT_2;
    let m = |rows: [[C64; 2]; 2]| {
        Matrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).expect("2x2")
    };
    match kind {
        GateKind::I => Matrix::identity(2),
        GateKind::X => m([[z, o], [o, z]]),
        GateKind::Y => m([[z, c(0.0, -1.0)], [c(0.0, 1.0), z]]),
        GateKind::Z => m([[o, z], [z, -o]]),
        GateKind::H => m([[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]),
        GateKind::S => m([[o, z], [z, c(0.0, 1.0)]]),
        GateKind::T => m([[o, z], [z, C64::from_polar(1.0, FRAC_PI_4)]]),
        GateKind::Cnot => {
            let mut g = Matrix::zeros(4, 4);
            g[(0, 0)] = o;
            g[(1, 1)] = o;
            g[(2, 3)] = o;
            g[(3, 2)] = o;
            g
        }
        GateKind::U { alpha, theta, n } => {
            let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            // cos(θ/2) I − i sin(θ/2) n·σ
            let a = c(ch, -sh * n[2]);
            let b = c(-sh * n[1], -sh * n[0]);
            let cc = c(sh * n[1], -sh * n[0]);
            let d = c(ch, sh * n[2]);
            m([[a, b], [cc, d]]).scale(C64::from_polar(1.0, alpha))
        }
    }
}

fn check_axis(n: &[f64; 3]) -> Result<()> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
        return Err(QuditError::Domain(format!(
            "rotation axis has norm {norm}, expected 1"
        )));
    }
    Ok(())
}

/// `e^{iα} R_n(θ)` acting on `target`.
pub fn arbitrary_u(alpha: f64, theta: f64, n: [f64; 3], target: usize) -> Result<Gate> {
    Gate::single(GateKind::U { alpha, theta, n }, target)
}

fn n_qubits(state: &Ket) -> Result<usize> {
    let d = state.dims().dims();
    if d.iter().any(|&x| x != 2) {
        return Err(QuditError::Dimension(format!(
            "circuit state must be qubits, got {}",
            state.dims()
        )));
    }
    Ok(d.len())
}

/// Applies `g` to a qubit register, preserving the norm.
pub fn apply_gate(state: &Ket, g: &Gate) -> Result<Ket> {
    let n = n_qubits(state)?;
    if let Some(&bad) = g.qubits.iter().find(|&&q| q >= n) {
        return Err(QuditError::Index(format!(
            "qubit {bad} out of range for {n} qubits"
        )));
    }
    let mut a = state.amplitudes().to_vec();
    let stride = |q: usize| 1usize << (n - 1 - q);
    match g.kind {
        GateKind::Cnot => {
            let (cs, ts) = (stride(g.qubits[0]), stride(g.qubits[1]));
            for i in 0..a.len() {
                if i & cs != 0 && i & ts == 0 {
                    a.swap(i, i | ts);
                }
            }
        }
        kind => {
            let u = gate_matrix(kind);
            let s = stride(g.qubits[0]);
            for i in 0..a.len() {
                if i & s == 0 {
                    let (x, y) = (a[i], a[i | s]);
                    a[i] = u.get(0, 0) * x + u.get(0, 1) * y;
                    a[i | s] = u.get(1, 0) * x + u.get(1, 1) * y;
                }
            }
        }
    }
    Ok(Ket::from_trusted(a, state.dims().clone()))
}

/// One step of a [`Circuit`].
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Gate(Gate),
    /// Computational-basis measurement of one qubit.
    Measure(usize),
}

/// Ordered gates and measurements on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    steps: Vec<Step>,
}

impl Circuit {
    pub fn new(n_qubits: usize, steps: Vec<Step>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(QuditError::Dimension(
                "circuit needs at least one qubit".into(),
            ));
        }
        DimSpec::qubits(n_qubits)?;
        for s in &steps {
            let qs: &[usize] = match s {
                Step::Gate(g) => &g.qubits,
                Step::Measure(q) => std::slice::from_ref(q),
            };
            if let Some(&bad) = qs.iter().find(|&&q| q >= n_qubits) {
                return Err(QuditError::Index(format!("qubit {bad} out of range")));
            }
        }
        Ok(Circuit { n_qubits, steps })
    }

    /// The protocol: `prep` on `q0`, `H q1`, `CNOT(q1→q2)`, `CNOT(q0→q1)`,
    /// `H q0`, then measure `q0` and `q1`.
    pub fn teleport(prep: Gate) -> Result<Self> {
        Circuit::new(
            3,
            vec![
                Step::Gate(prep),
                Step::Gate(Gate::single(GateKind::H, 1)?),
                Step::Gate(Gate::cnot(1, 2)?),
                Step::Gate(Gate::cnot(0, 1)?),
                Step::Gate(Gate::single(GateKind::H, 0)?),
                Step::Measure(0),
                Step::Measure(1),
            ],
        )
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `|0…0⟩`.
    pub fn ground(&self) -> Ket {
        Ket::basis(DimSpec::qubits(self.n_qubits).expect("checked"), 0).expect("index 0")
    }

    /// Runs the gates up to the first measurement.
    pub fn run_unitary_part(&self, state: &Ket) -> Result<Ket> {
        let mut s = state.clone();
        for step in &self.steps {
            match step {
                Step::Gate(g) => s = apply_gate(&s, g)?,
                Step::Measure(_) => break,
            }
        }
        Ok(s)
    }

    /// Runs every step, collapsing at each measurement with a uniform draw
    /// from `draw`. Returns the final state and the measured bits in order.
    pub fn run_sampled(
        &self,
        state: &Ket,
        mut draw: impl FnMut() -> f64,
    ) -> Result<(Ket, Vec<u8>)> {
        let mut s = state.clone();
        let mut bits = Vec::new();
        for step in &self.steps {
            match step {
                Step::Gate(g) => s = apply_gate(&s, g)?,
                Step::Measure(q) => {
                    let stride = 1usize << (self.n_qubits - 1 - q);
                    let p1: f64 = s
                        .amplitudes()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| i & stride != 0)
                        .map(|(_, z)| z.norm_sqr())
                        .sum();
                    let bit = u8::from(draw() < p1);
                    let keep = |i: usize| (i & stride != 0) == (bit == 1);
                    let p = if bit == 1 { p1 } else { 1.0 - p1 };
                    let amps: Vec<C64> = s
                        .amplitudes()
                        .iter()
                        .enumerate()
                        .map(|(i, z)| if keep(i) { z / p.sqrt() } else { c(0.0, 0.0) })
                        .collect();
                    s = Ket::from_trusted(amps, s.dims().clone());
                    bits.push(bit);
                }
            }
        }
        Ok((s, bits))
    }
}

/// An arbitrary-rotation gate on `q0` with `U|0⟩ = psi`, using an axis in
/// the xy-plane.
pub fn preparation_gate(psi: &Ket) -> Result<Gate> {
    check_payload(psi)?;
    let (c1, c2) = (psi.amplitudes()[0], psi.amplitudes()[1]);
    let alpha = c1.arg();
    let half = c1.norm().clamp(0.0, 1.0).acos();
    let n = if half.sin() < 1e-15 {
        [1.0, 0.0, 0.0]
    } else {
        let w = c2 * C64::from_polar(1.0, -alpha) / half.sin();
        let w = w / w.norm();
        [-w.im, w.re, 0.0]
    };
    arbitrary_u(alpha, 2.0 * half, n, 0)
}

/// Bob's correction for branch `(a, b)`: `I`, `X`, `Z`, `ZX`.
pub fn correction(a: u8, b: u8) -> &'static [GateKind] {
    match (a, b) {
        (0, 0) => &[GateKind::I],
        (0, 1) => &[GateKind::X],
        (1, 0) => &[GateKind::Z],
        _ => &[GateKind::X, GateKind::Z],
    }
}

/// Name of the correction as the operator product, e.g. `ZX`.
pub fn correction_name(a: u8, b: u8) -> &'static str {
    match (a, b) {
        (0, 0) => "I",
        (0, 1) => "X",
        (1, 0) => "Z",
        _ => "ZX",
    }
}

fn apply_kinds(k: &Ket, kinds: &[GateKind]) -> Result<Ket> {
    kinds
        .iter()
        .try_fold(k.clone(), |acc, &g| apply_gate(&acc, &Gate::single(g, 0)?))
}

fn check_payload(psi: &Ket) -> Result<()> {
    if psi.dims().dims() != [2] {
        return Err(QuditError::Dimension(format!(
            "payload must be one qubit, got {}",
            psi.dims()
        )));
    }
    if (psi.norm_sqr() - 1.0).abs() > KET_NORM_TOL {
        return Err(QuditError::Normalization(
            "payload is not normalized".into(),
        ));
    }
    Ok(())
}

/// `|ψ0⟩ … |ψ4⟩`: ground, after `U⊗H⊗I`, after `CNOT(q1→q2)`, after
/// `CNOT(q0→q1)`, after `H q0`.
pub fn protocol_states(psi: &Ket) -> Result<[Ket; 5]> {
    let circuit = Circuit::teleport(preparation_gate(psi)?)?;
    let gates: Vec<&Gate> = circuit
        .steps()
        .iter()
        .filter_map(|s| match s {
            Step::Gate(g) => Some(g),
            Step::Measure(_) => None,
        })
        .collect();
    let psi0 = circuit.ground();
    let psi1 = apply_gate(&apply_gate(&psi0, gates[0])?, gates[1])?;
    let psi2 = apply_gate(&psi1, gates[2])?;
    let psi3 = apply_gate(&psi2, gates[3])?;
    let psi4 = apply_gate(&psi3, gates[4])?;
    Ok([psi0, psi1, psi2, psi3, psi4])
}

/// One measurement branch of the protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportOutcome {
    pub branch: (u8, u8),
    pub probability: f64,
    pub bob_state_pre_correction: Ket,
    pub correction: &'static str,
    pub bob_state_final: Ket,
    pub fidelity: f64,
}

fn bob_slice(state: &Ket, a: u8, b: u8) -> (f64, Vec<C64>) {
    let base = (a as usize) * 4 + (b as usize) * 2;
    let v = vec![state.amplitudes()[base], state.amplitudes()[base + 1]];
    let p = v.iter().map(|z| z.norm_sqr()).sum();
    (p, v)
}

/// All four branches, each with Bob's state before and after correction.
///
/// Bob's pre-correction state comes from projecting `|ψ4⟩`. The branch
/// probabilities and the corrected states come from the deferred-measurement
/// circuit (`CNOT(q1→q2)` then controlled-Z from `q0` to `q2`), and are
/// checked against the projective route.
pub fn run_enumerate(psi: &Ket) -> Result<Vec<TeleportOutcome>> {
    let psi4 = protocol_states(psi)?[4].clone();
    let deferred = deferred_corrections(&psi4)?;
    let q = DimSpec::single(2)?;
    let mut out = Vec::with_capacity(4);
    for a in 0..2u8 {
        for b in 0..2u8 {
            let (p, v) = bob_slice(&psi4, a, b);
            let pre = Ket::normalized(v, q.clone())?;
            let corrected = apply_kinds(&pre, correction(a, b))?;
            let (pd, vd) = bob_slice(&deferred, a, b);
            let fin = Ket::normalized(vd, q.clone())?;
            if (p - pd).abs() > 1e-12 || fin.max_diff_canonical(&corrected) > 1e-10 {
                return Err(QuditError::Numerical(format!(
                    "deferred and projective routes disagree on branch {a}{b}"
                )));
            }
            let fidelity = psi.fidelity(&fin)?;
            out.push(TeleportOutcome {
                branch: (a, b),
                probability: pd,
                bob_state_pre_correction: pre,
                correction: correction_name(a, b),
                bob_state_final: fin,
                fidelity,
            });
        }
    }
    Ok(out)
}

fn deferred_corrections(psi4: &Ket) -> Result<Ket> {
    let s = apply_gate(psi4, &Gate::cnot(1, 2)?)?;
    // controlled-Z(q0, q2) = H_2 · CNOT(q0→q2) · H_2
    let h2 = Gate::single(GateKind::H, 2)?;
    let s = apply_gate(&s, &h2)?;
    let s = apply_gate(&s, &Gate::cnot(0, 2)?)?;
    apply_gate(&s, &h2)
}

/// Shot statistics of [`run_sample`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTally {
    pub shots: u64,
    /// Counts indexed by `2a + b`.
    pub counts: [u64; 4],
    pub min_fidelity: f64,
    /// Branch index `2a + b` of every shot, in order.
    pub sequence: Vec<u8>,
}

/// Seeded shots through the mid-circuit-measurement circuit, with Bob's
/// correction applied after each collapse.
pub fn run_sample(psi: &Ket, seed: u64, shots: u64) -> Result<SampleTally> {
    let circuit = Circuit::teleport(preparation_gate(psi)?)?;
    let start = circuit.ground();
    let mut rng = seeded(seed);
    let mut counts = [0u64; 4];
    let mut sequence = Vec::with_capacity(shots as usize);
    let mut min_fidelity = f64::INFINITY;
    let q = DimSpec::single(2)?;
    for _ in 0..shots {
        let (s, bits) = circuit.run_sampled(&start, || uniform(&mut rng))?;
        let (a, b) = (bits[0], bits[1]);
        let (_, v) = bob_slice(&s, a, b);
        let bob = apply_kinds(&Ket::normalized(v, q.clone())?, correction(a, b))?;
        min_fidelity = min_fidelity.min(psi.fidelity(&bob)?);
        let idx = 2 * a + b;
        counts[idx as usize] += 1;
        sequence.push(idx);
    }
    Ok(SampleTally {
        shots,
        counts,
        min_fidelity,
        sequence,
    })
}

/// Bob's reduced state after Alice measures but before any classical
/// message arrives.
pub fn bob_premeasure_reduced(psi: &Ket) -> Result<DensityOp> {
    let psi4 = protocol_states(psi)?[4].clone();
    let dims = DimSpec::qubits(3)?;
    let mut ensemble = Matrix::zeros(8, 8);
    for a in 0..2u8 {
        for b in 0..2u8 {
            let (_, v) = bob_slice(&psi4, a, b);
            let mut full = vec![c(0.0, 0.0); 8];
            let base = (a as usize) * 4 + (b as usize) * 2;
            full[base] = v[0];
            full[base + 1] = v[1];
            ensemble = &ensemble + &Matrix::outer(&full, &full);
        }
    }
    partial_trace(&DensityOp::from_trusted(ensemble, dims), &[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::catalog;

    fn k1(a: C64, b: C64) -> Ket {
        Ket::new(vec![a, b], DimSpec::single(2).unwrap()).unwrap()
    }

    fn m(k: GateKind) -> Matrix {
        gate_matrix(k)
    }

    #[test]
    fn gate_identities() {
        use GateKind::*;
        let ii = C64::new(0.0, 1.0);
        let e = |a: &Matrix, b: &Matrix| a.max_abs_diff(b);
        assert!(e(&(&(&m(H) * &m(Z)) * &m(H)), &m(X)) < 1e-14);
        assert!(e(&(&(&m(H) * &m(X)) * &m(H)), &m(Z)) < 1e-14);
        assert!(e(&(&(&m(H) * &m(Y)) * &m(H)), &-&m(Y)) < 1e-14);
        assert!(e(&(&m(Z) * &m(X)), &m(Y).scale(ii)) < 1e-14);
        assert!(e(&(&m(X) * &m(Z)), &m(Y).scale(-ii)) < 1e-14);
        let xyz = &(&m(X) * &m(Y)) * &m(Z);
        assert!(e(&xyz.scale(-ii), &Matrix::identity(2)) < 1e-14);
        for k in [I, X, Y, Z, H, S, T, Cnot] {
            assert!(m(k).unitary_deviation() < 1e-12);
        }
    }

    #[test]
    fn single_gate_examples() {
        let d = DimSpec::single(2).unwrap();
        let zero = Ket::basis(d.clone(), 0).unwrap();
        let plus = apply_gate(&zero, &Gate::single(GateKind::H, 0).unwrap()).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!(plus.max_diff_canonical(&Ket::from_real(&[h, h], d.clone()).unwrap()) < 1e-15);

        let two = DimSpec::qubits(2).unwrap();
        let p0 = Ket::from_real(&[h, 0.0, h, 0.0], two.clone()).unwrap();
        let bell = apply_gate(&p0, &Gate::cnot(0, 1).unwrap()).unwrap();
        assert!(bell.max_diff_canonical(&catalog::bell(catalog::Bell::PhiPlus)) < 1e-15);

        let psi = catalog::hopf(0.8, 1.3);
        let hxh = [GateKind::H, GateKind::X, GateKind::H]
            .iter()
            .try_fold(psi.clone(), |s, &k| {
                apply_gate(&s, &Gate::single(k, 0).unwrap())
            })
            .unwrap();
        let z = apply_gate(&psi, &Gate::single(GateKind::Z, 0).unwrap()).unwrap();
        assert!(hxh.max_diff_canonical(&z) < 1e-15);
        assert!(apply_gate(&psi, &Gate::single(GateKind::X, 1).unwrap()).is_err());
        assert!(Gate::cnot(1, 1).is_err());
    }

    #[test]
    fn arbitrary_gate_examples() {
        let g = arbitrary_u(0.0, 0.0, [0.0, 0.0, 1.0], 0).unwrap();
        assert!(g.matrix().max_abs_diff(&Matrix::identity(2)) < 1e-15);
        let (c1, c2) = (0.6, 0.8);
        let g = arbitrary_u(
            std::f64::consts::FRAC_PI_2,
            std::f64::consts::PI,
            [c2, 0.0, c1],
            0,
        )
        .unwrap();
        let out = apply_gate(&Ket::basis(DimSpec::single(2).unwrap(), 0).unwrap(), &g).unwrap();
        assert!((out.amplitudes()[0] - c(c1, 0.0)).norm() < 1e-15);
        assert!((out.amplitudes()[1] - c(c2, 0.0)).norm() < 1e-15);
        let full = arbitrary_u(0.0, 2.0 * std::f64::consts::PI, [0.0, 0.0, 1.0], 0).unwrap();
        assert!(
            full.matrix()
                .max_abs_diff(&Matrix::identity(2).scale_real(-1.0))
                < 1e-15
        );
        assert!(arbitrary_u(0.0, 1.0, [1.0, 1.0, 0.0], 0).is_err());
    }

    #[test]
    fn intermediate_states_match_derivation() {
        let psi = catalog::hopf(1.047, 0.524);
        let (c1, c2) = (psi.amplitudes()[0], psi.amplitudes()[1]);
        let h = FRAC_1_SQRT_2;
        let s = protocol_states(&psi).unwrap();
        let z = c(0.0, 0.0);
        let want2 = [c1 * h, z, z, c1 * h, c2 * h, z, z, c2 * h];
        let want3 = [c1 * h, z, z, c1 * h, z, c2 * h, c2 * h, z];
        let want4 = [
            c1 / 2.0,
            c2 / 2.0,
            c2 / 2.0,
            c1 / 2.0,
            c1 / 2.0,
            -c2 / 2.0,
            -c2 / 2.0,
            c1 / 2.0,
        ];
        for (got, want) in [(&s[2], want2), (&s[3], want3), (&s[4], want4)] {
            for (a, b) in got.amplitudes().iter().zip(want) {
                assert!((a - b).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn enumerate_recovers_payload() {
        for psi in [
            Ket::basis(DimSpec::single(2).unwrap(), 0).unwrap(),
            catalog::hopf(1.047, 0.524),
        ] {
            let out = run_enumerate(&psi).unwrap();
            assert_eq!(out.len(), 4);
            for o in &out {
                assert!((o.probability - 0.25).abs() < 1e-12);
                assert!((o.fidelity - 1.0).abs() < 1e-10);
            }
            let x = apply_gate(&psi, &Gate::single(GateKind::X, 0).unwrap()).unwrap();
            assert!(out[1].bob_state_pre_correction.max_diff_canonical(&x) < 1e-14);
            assert_eq!(out[3].correction, "ZX");
        }
    }

    #[test]
    fn no_signaling() {
        let half = Matrix::identity(2).scale_real(0.5);
        let h = FRAC_1_SQRT_2;
        for psi in [
            Ket::basis(DimSpec::single(2).unwrap(), 0).unwrap(),
            k1(c(h, 0.0), c(h, 0.0)),
            catalog::hopf(2.1, -0.7),
        ] {
            let r = bob_premeasure_reduced(&psi).unwrap();
            assert!(r.matrix().max_abs_diff(&half) < 1e-11);
        }
    }

    #[test]
    fn sampling_is_deterministic_and_faithful() {
        let psi = catalog::hopf(0.4, 2.0);
        let a = run_sample(&psi, 42, 500).unwrap();
        let b = run_sample(&psi, 42, 500).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 500);
        assert!(a.min_fidelity > 1.0 - 1e-10);
        let c = run_sample(&psi, 43, 500).unwrap();
        assert_ne!(a.sequence, c.sequence);
    }
}
