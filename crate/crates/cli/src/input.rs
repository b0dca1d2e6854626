use std::io::Read;

use qudit::generators::pauli;
use qudit::json::{matrix_from_json, state_from_json};
use qudit::states::{NamedState, State};
use qudit::{Matrix, QuditError, Result};

/// `-` reads JSON from stdin, text starting with `{` is parsed as state
/// JSON, anything else is a catalog name such as `bell-phi-plus` or
/// `werner:0.5`.
pub fn read_state(arg: &str) -> Result<State> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| QuditError::Parse(format!("reading stdin: {e}")))?;
        buf
    } else {
        arg.to_string()
    };
    let t = text.trim();
    if t.starts_with('{') {
        state_from_json(t)
    } else {
        t.parse::<NamedState>()?.build()
    }
}

/// Pauli names `x`, `y`, `z` (single qubit) or matrix JSON.
pub fn read_observable(arg: &str) -> Result<Matrix> {
    let [sx, sy, sz] = pauli();
    match arg.trim() {
        "x" | "sx" => Ok(sx),
        "y" | "sy" => Ok(sy),
        "z" | "sz" => Ok(sz),
        t => matrix_from_json(t),
    }
}

pub fn read_f64_array(arg: &str, what: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> =
        serde_json::from_str(arg.trim()).map_err(|e| QuditError::Parse(format!("{what}: {e}")))?;
    if v.iter().any(|x| !x.is_finite()) {
        return Err(QuditError::Parse(format!("{what}: non-finite entry")));
    }
    Ok(v)
}
