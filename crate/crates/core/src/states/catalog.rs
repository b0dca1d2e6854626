//! Named states: qubit axis states, Hopf-parametrized qubits, Bell, GHZ, W,
//! Werner, the partially entangled three-term state, and qutrit basis states.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use super::{dm_from_ket, DensityOp, DimSpec, Ket};
use crate::error::{QuditError, Result};
use crate::linalg::{Matrix, C64};

fn qubit() -> DimSpec {
    DimSpec::single(2).expect("valid")
}

fn two_qubits() -> DimSpec {
    DimSpec::qubits(2).expect("valid")
}

fn ket(amps: Vec<C64>, dims: DimSpec) -> Ket {
    Ket::from_trusted(amps, dims)
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn hopf(theta: f64, phi: f64) -> Ket {
    ket(
        vec![
            re((theta / 2.0).cos()),
            C64::from_polar((theta / 2.0).sin(), phi),
        ],
        qubit(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];
}

/// `φ± = (|00⟩ ± |11⟩)/√2`, `ψ± = (|01⟩ ± |10⟩)/√2`.
pub fn bell(kind: Bell) -> Ket {
    let h = FRAC_1_SQRT_2;
    let amps = match kind {
        Bell::PhiPlus => [h, 0.0, 0.0, h],
        Bell::PhiMinus => [h, 0.0, 0.0, -h],
        Bell::PsiPlus => [0.0, h, h, 0.0],
        Bell::PsiMinus => [0.0, h, -h, 0.0],
    };
    ket(amps.iter().map(|&x| re(x)).collect(), two_qubits())
}

/// `(|000⟩ + |111⟩)/√2`.
pub fn ghz3() -> Ket {
    let mut a = vec![re(0.0); 8];
    a[0] = re(FRAC_1_SQRT_2);
    a[7] = re(FRAC_1_SQRT_2);
    ket(a, DimSpec::qubits(3).expect("valid"))
}

/// `(|001⟩ + |010⟩ + |100⟩)/√3`.
pub fn w3() -> Ket {
    let s = 1.0 / 3f64.sqrt();
    let mut a = vec![re(0.0); 8];
    a[1] = re(s);
    a[2] = re(s);
    a[4] = re(s);
    ket(a, DimSpec::qubits(3).expect("valid"))
}

/// `(|00⟩ + |11⟩ + |01⟩)/√3`.
pub fn partial_entangled() -> Ket {
    let s = 1.0 / 3f64.sqrt();
    ket(vec![re(s), re(s), re(0.0), re(s)], two_qubits())
}

/// Qutrit basis state `|k⟩`, `k ∈ {0, 1, 2}`.
pub fn qutrit_basis(k: usize) -> Result<Ket> {
    Ket::basis(DimSpec::single(3)?, k)
}

/// Singlet projector `|ψ⁻⟩⟨ψ⁻|`.
pub fn singlet_projector() -> Matrix {
    bell(Bell::PsiMinus).projector()
}

/// Werner state `(1−x)/4 · I₄ + x·|ψ⁻⟩⟨ψ⁻|` for `x ∈ [−1, 1]`.
///
/// Positive semidefinite only for `x ≥ −1/3`; below that the result is
/// returned as a matrix by [`werner_matrix`] but rejected here.
pub fn werner(x: f64) -> Result<DensityOp> {
    let m = werner_matrix(x)?;
    if x < -1.0 / 3.0 - 1e-12 {
        return Err(QuditError::Positivity(format!(
            "werner({x}) has eigenvalue {} < 0",
            (1.0 + 3.0 * x) / 4.0
        )));
    }
    Ok(DensityOp::from_trusted(m, two_qubits()))
}

/// The Werner matrix for any `x ∈ [−1, 1]`, without positivity check.
pub fn werner_matrix(x: f64) -> Result<Matrix> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(QuditError::Domain(format!(
            "werner parameter {x} outside [-1, 1]"
        )));
    }
    Ok(&Matrix::identity(4).scale_real((1.0 - x) / 4.0) + &singlet_projector().scale_real(x))
}

/// Either a pure or a mixed state.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(Ket),
    Mixed(DensityOp),
}

impl State {
    pub fn dims(&self) -> &DimSpec {
        match self {
            State::Pure(k) => k.dims(),
            State::Mixed(r) => r.dims(),
        }
    }

    pub fn to_density(&self) -> DensityOp {
        match self {
            State::Pure(k) => dm_from_ket(k),
            State::Mixed(r) => r.clone(),
        }
    }

    pub fn as_ket(&self) -> Option<&Ket> {
        match self {
            State::Pure(k) => Some(k),
            State::Mixed(_) => None,
        }
    }
}

/// Catalog entry, parseable from strings such as `x+`, `bell-phi-plus`,
/// `hopf:1.0,0.5`, `werner:0.4`, `qutrit:2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedState {
    ZPlus,
    ZMinus,
    XPlus,
    XMinus,
    YPlus,
    YMinus,
    Hopf { theta: f64, phi: f64 },
    Bell(Bell),
    Ghz3,
    W3,
    Werner { x: f64 },
    PartialEntangled,
    QutritBasis(usize),
}

impl NamedState {
    pub fn build(&self) -> Result<State> {
        let h = FRAC_1_SQRT_2;
        let q = |a: C64, b: C64| State::Pure(ket(vec![a, b], qubit()));
        Ok(match *self {
            NamedState::ZPlus => q(re(1.0), re(0.0)),
            NamedState::ZMinus => q(re(0.0), re(1.0)),
            NamedState::XPlus => q(re(h), re(h)),
            NamedState::XMinus => q(re(h), re(-h)),
            NamedState::YPlus => q(re(h), C64::new(0.0, h)),
            NamedState::YMinus => q(re(h), C64::new(0.0, -h)),
            NamedState::Hopf { theta, phi } => {
                if !theta.is_finite() || !phi.is_finite() {
                    return Err(QuditError::Domain("non-finite Hopf angle".into()));
                }
                State::Pure(hopf(theta, phi))
            }
            NamedState::Bell(b) => State::Pure(bell(b)),
            NamedState::Ghz3 => State::Pure(ghz3()),
            NamedState::W3 => State::Pure(w3()),
            NamedState::Werner { x } => State::Mixed(werner(x)?),
            NamedState::PartialEntangled => State::Pure(partial_entangled()),
            NamedState::QutritBasis(k) => State::Pure(qutrit_basis(k)?),
        })
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedState::ZPlus => write!(f, "z+"),
            NamedState::ZMinus => write!(f, "z-"),
            NamedState::XPlus => write!(f, "x+"),
            NamedState::XMinus => write!(f, "x-"),
            NamedState::YPlus => write!(f, "y+"),
            NamedState::YMinus => write!(f, "y-"),
            NamedState::Hopf { theta, phi } => write!(f, "hopf:{theta},{phi}"),
            NamedState::Bell(Bell::PhiPlus) => write!(f, "bell-phi-plus"),
            NamedState::Bell(Bell::PhiMinus) => write!(f, "bell-phi-minus"),
            NamedState::Bell(Bell::PsiPlus) => write!(f, "bell-psi-plus"),
            NamedState::Bell(Bell::PsiMinus) => write!(f, "bell-psi-minus"),
            NamedState::Ghz3 => write!(f, "ghz3"),
            NamedState::W3 => write!(f, "w3"),
            NamedState::Werner { x } => write!(f, "werner:{x}"),
            NamedState::PartialEntangled => write!(f, "partial-entangled"),
            NamedState::QutritBasis(k) => write!(f, "qutrit:{k}"),
        }
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| QuditError::Parse(format!("bad {what} '{s}'")))?;
    if !v.is_finite() {
        return Err(QuditError::Parse(format!("non-finite {what} '{s}'")));
    }
    Ok(v)
}

impl FromStr for NamedState {
    type Err = QuditError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, arg) = match lower.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (lower.as_str(), None),
        };
        let no_arg = |v: NamedState| -> Result<NamedState> {
            match arg {
                None => Ok(v),
                Some(_) => Err(QuditError::Parse(format!(
                    "state '{name}' takes no parameter"
                ))),
            }
        };
        let need =
            || arg.ok_or_else(|| QuditError::Parse(format!("state '{name}' needs a parameter")));
        match name {
            "z+" | "0" => no_arg(NamedState::ZPlus),
            "z-" | "1" => no_arg(NamedState::ZMinus),
            "x+" | "+" => no_arg(NamedState::XPlus),
            "x-" | "-" => no_arg(NamedState::XMinus),
            "y+" => no_arg(NamedState::YPlus),
            "y-" => no_arg(NamedState::YMinus),
            "bell-phi-plus" | "phi+" => no_arg(NamedState::Bell(Bell::PhiPlus)),
            "bell-phi-minus" | "phi-" => no_arg(NamedState::Bell(Bell::PhiMinus)),
            "bell-psi-plus" | "psi+" => no_arg(NamedState::Bell(Bell::PsiPlus)),
            "bell-psi-minus" | "psi-" | "singlet" => no_arg(NamedState::Bell(Bell::PsiMinus)),
            "ghz3" | "ghz" => no_arg(NamedState::Ghz3),
            "w3" | "w" => no_arg(NamedState::W3),
            "partial-entangled" | "partial_entangled" | "partial_entangled_3term" => {
                no_arg(NamedState::PartialEntangled)
            }
            "hopf" => {
                let a = need()?;
                let (t, p) = a.split_once(',').ok_or_else(|| {
                    QuditError::Parse(format!("hopf expects 'theta,phi', got '{a}'"))
                })?;
                Ok(NamedState::Hopf {
                    theta: parse_f64(t, "theta")?,
                    phi: parse_f64(p, "phi")?,
                })
            }
            "werner" => {
                let x = parse_f64(need()?, "werner parameter")?;
                if !(-1.0..=1.0).contains(&x) {
                    return Err(QuditError::Domain(format!(
                        "werner parameter {x} outside [-1, 1]"
                    )));
                }
                Ok(NamedState::Werner { x })
            }
            "qutrit" => {
                let a = need()?;
                let k: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| QuditError::Parse(format!("bad qutrit index '{a}'")))?;
                if k > 2 {
                    return Err(QuditError::Index(format!("qutrit index {k} outside 0..=2")));
                }
                Ok(NamedState::QutritBasis(k))
            }
            _ => Err(QuditError::Parse(format!("unknown state name '{s}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_definitions() {
        let h = FRAC_1_SQRT_2;
        let phi = bell(Bell::PhiPlus);
        assert_eq!(phi.amplitudes(), &[re(h), re(0.0), re(0.0), re(h)]);
        let s = 1.0 / 3f64.sqrt();
        let w = w3();
        for (i, a) in w.amplitudes().iter().enumerate() {
            let want = if [1, 2, 4].contains(&i) { s } else { 0.0 };
            assert_eq!(*a, re(want));
        }
        assert_eq!(
            partial_entangled().amplitudes(),
            &[re(s), re(s), re(0.0), re(s)]
        );
    }

    #[test]
    fn werner_matches_definition() {
        let x = 0.3;
        let s = Matrix::from_real_rows(&[
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.5, -0.5, 0.0],
            &[0.0, -0.5, 0.5, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        let want = &Matrix::identity(4).scale_real((1.0 - x) / 4.0) + &s.scale_real(x);
        assert!(werner(x).unwrap().matrix().max_abs_diff(&want) < 1e-15);
        assert!(werner(1.5).is_err());
        assert!(werner(-0.5).is_err());
        assert!(werner_matrix(-0.5).is_ok());
    }

    #[test]
    fn every_pure_entry_is_normalized() {
        let names = [
            "z+",
            "z-",
            "x+",
            "x-",
            "y+",
            "y-",
            "hopf:0.7,2.1",
            "bell-phi-plus",
            "bell-phi-minus",
            "bell-psi-plus",
            "bell-psi-minus",
            "ghz3",
            "w3",
            "partial-entangled",
            "qutrit:0",
            "qutrit:2",
        ];
        for n in names {
            let st: NamedState = n.parse().unwrap();
            assert_eq!(st.to_string().parse::<NamedState>().unwrap(), st);
            match st.build().unwrap() {
                State::Pure(k) => assert!((k.norm_sqr() - 1.0).abs() < 1e-15, "{n}"),
                State::Mixed(_) => panic!("{n} should be pure"),
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!("nope".parse::<NamedState>().is_err());
        assert!(matches!(
            "werner:1.5".parse::<NamedState>(),
            Err(QuditError::Domain(_))
        ));
        assert!("werner".parse::<NamedState>().is_err());
        assert!("qutrit:3".parse::<NamedState>().is_err());
        assert!("x+:1".parse::<NamedState>().is_err());
        assert!("hopf:1".parse::<NamedState>().is_err());
    }
}
