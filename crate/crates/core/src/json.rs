//! JSON encodings shared by the library and the command line.
//!
//! Matrix: `{"rows":R,"cols":C,"data":[[re,im],…]}` row-major.
//! Density operator: `{"dims":[…],"matrix":{…}}`.
//! Ket: `{"dims":[…],"amplitudes":[[re,im],…]}`.
//!
//! Reals are written with 17 significant digits and read back with the
//! standard library parser, so every finite `f64` survives a round trip
//! bit for bit.

use serde::ser::{Error as _, SerializeSeq};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{QuditError, Result};
use crate::linalg::{Matrix, C64};
use crate::states::{validate_density, DensityOp, DimSpec, Ket, State};

/// A real serialized with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real17(pub f64);

impl Serialize for Real17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(S::Error::custom(format!(
                "cannot encode {} as JSON",
                self.0
            )));
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(S::Error::custom)?;
        raw.serialize(s)
    }
}

struct ComplexList<'a>(&'a [C64]);

impl Serialize for ComplexList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for z in self.0 {
            seq.serialize_element(&[Real17(z.re), Real17(z.im)])?;
        }
        seq.end()
    }
}

/// Serialize adapter for a [`Matrix`].
pub struct MatrixJson<'a>(pub &'a Matrix);

impl Serialize for MatrixJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'b> {
            rows: usize,
            cols: usize,
            data: ComplexList<'b>,
        }
        Out {
            rows: self.0.rows(),
            cols: self.0.cols(),
            data: ComplexList(self.0.data()),
        }
        .serialize(s)
    }
}

/// Serialize adapter for a [`DensityOp`].
pub struct DensityJson<'a>(pub &'a DensityOp);

impl Serialize for DensityJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'b> {
            dims: &'b [usize],
            matrix: MatrixJson<'b>,
        }
        Out {
            dims: self.0.dims().dims(),
            matrix: MatrixJson(self.0.matrix()),
        }
        .serialize(s)
    }
}

/// Serialize adapter for a [`Ket`].
pub struct KetJson<'a>(pub &'a Ket);

impl Serialize for KetJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'b> {
            dims: &'b [usize],
            amplitudes: ComplexList<'b>,
        }
        Out {
            dims: self.0.dims().dims(),
            amplitudes: ComplexList(self.0.amplitudes()),
        }
        .serialize(s)
    }
}

fn to_string<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(|e| QuditError::Parse(e.to_string()))
}

pub fn matrix_to_json(m: &Matrix) -> Result<String> {
    to_string(&MatrixJson(m))
}

pub fn density_to_json(rho: &DensityOp) -> Result<String> {
    to_string(&DensityJson(rho))
}

pub fn ket_to_json(k: &Ket) -> Result<String> {
    to_string(&KetJson(k))
}

#[derive(Deserialize)]
struct MatrixIn {
    rows: usize,
    cols: usize,
    data: Vec<[Box<RawValue>; 2]>,
}

#[derive(Deserialize)]
struct DensityIn {
    dims: Vec<usize>,
    matrix: MatrixIn,
}

#[derive(Deserialize)]
struct KetIn {
    dims: Vec<usize>,
    amplitudes: Vec<[Box<RawValue>; 2]>,
}

#[derive(Deserialize)]
struct StateProbe {
    matrix: Option<serde::de::IgnoredAny>,
    amplitudes: Option<serde::de::IgnoredAny>,
}

fn real(raw: &RawValue) -> Result<f64> {
    let t = raw.get().trim();
    t.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite() && !t.starts_with('"'))
        .ok_or_else(|| QuditError::Parse(format!("expected a finite number, got {t}")))
}

fn complex_list(items: &[[Box<RawValue>; 2]]) -> Result<Vec<C64>> {
    items
        .iter()
        .map(|[re, im]| Ok(C64::new(real(re)?, real(im)?)))
        .collect()
}

fn parse<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| QuditError::Parse(e.to_string()))
}

impl MatrixIn {
    fn build(self) -> Result<Matrix> {
        Matrix::new(self.rows, self.cols, complex_list(&self.data)?)
    }
}

pub fn matrix_from_json(s: &str) -> Result<Matrix> {
    parse::<MatrixIn>(s)?.build()
}

/// Parses and validates a density operator.
pub fn density_from_json(s: &str) -> Result<DensityOp> {
    let d: DensityIn = parse(s)?;
    validate_density(&d.matrix.build()?, DimSpec::new(d.dims)?)
}

/// Parses and validates a normalized ket.
pub fn ket_from_json(s: &str) -> Result<Ket> {
    let k: KetIn = parse(s)?;
    Ket::new(complex_list(&k.amplitudes)?, DimSpec::new(k.dims)?)
}

/// Accepts either the density-operator or the ket encoding.
pub fn state_from_json(s: &str) -> Result<State> {
    let probe: StateProbe = parse(s)?;
    match (probe.matrix.is_some(), probe.amplitudes.is_some()) {
        (true, false) => Ok(State::Mixed(density_from_json(s)?)),
        (false, true) => Ok(State::Pure(ket_from_json(s)?)),
        _ => Err(QuditError::Parse(
            "state JSON needs exactly one of \"matrix\" or \"amplitudes\"".into(),
        )),
    }
}

pub fn state_to_json(s: &State) -> Result<String> {
    match s {
        State::Pure(k) => ket_to_json(k),
        State::Mixed(r) => density_to_json(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density, random_ket, seeded};
    use crate::states::catalog;

    #[test]
    fn matrix_format() {
        let m = Matrix::from_real_rows(&[&[1.0, 0.5]]).unwrap();
        let s = matrix_to_json(&m).unwrap();
        assert!(s.starts_with(r#"{"rows":1,"cols":2,"data":[["#));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["data"][1][0].as_f64(), Some(0.5));
        assert_eq!(matrix_from_json(&s).unwrap(), m);
    }

    #[test]
    fn round_trips_are_bit_identical() {
        let mut rng = seeded(5);
        for dims in [vec![2], vec![3], vec![2, 3]] {
            let d = DimSpec::new(dims).unwrap();
            let rho = random_density(&mut rng, &d);
            let back = density_from_json(&density_to_json(&rho).unwrap()).unwrap();
            let bits = |m: &Matrix| {
                m.data()
                    .iter()
                    .flat_map(|z| [z.re.to_bits(), z.im.to_bits()])
                    .collect::<Vec<_>>()
            };
            assert_eq!(bits(back.matrix()), bits(rho.matrix()));
            let k = random_ket(&mut rng, &d);
            assert_eq!(ket_from_json(&ket_to_json(&k).unwrap()).unwrap(), k);
        }
        let odd =
            Matrix::from_real_rows(&[&[f64::MIN_POSITIVE, -0.1, 1.0 / 3.0, f64::MAX]]).unwrap();
        assert_eq!(
            matrix_from_json(&matrix_to_json(&odd).unwrap()).unwrap(),
            odd
        );
    }

    #[test]
    fn state_dispatch_and_errors() {
        let k = catalog::bell(catalog::Bell::PsiMinus);
        match state_from_json(&ket_to_json(&k).unwrap()).unwrap() {
            State::Pure(p) => assert_eq!(p, k),
            State::Mixed(_) => panic!("expected a ket"),
        }
        assert!(matches!(state_from_json("{"), Err(QuditError::Parse(_))));
        assert!(matches!(
            state_from_json(r#"{"dims":[2],"amplitudes":[[1,0],[1,0]]}"#),
            Err(QuditError::Normalization(_))
        ));
        assert!(matches!(
            state_from_json(r#"{"dims":[2],"amplitudes":[["1",0],[0,0]]}"#),
            Err(QuditError::Parse(_))
        ));
        assert!(serde_json::to_string(&Real17(f64::NAN)).is_err());
    }
}
