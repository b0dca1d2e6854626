use std::fmt;
use std::str::FromStr;

use crate::error::{QuditError, Result};
use crate::linalg::check_dimension;

/// Ordered subsystem dimensions `[d_1, …, d_N]`, leftmost = subsystem 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimSpec(Vec<usize>);

impl DimSpec {
    /// Nonempty, every entry ≥ 2, product within the dimension cap.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(QuditError::Dimension("dimension list is empty".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(QuditError::Dimension(format!(
                "subsystem dimension {d} is below 2"
            )));
        }
        let mut total: usize = 1;
        for &d in &dims {
            total = total
                .checked_mul(d)
                .ok_or_else(|| QuditError::Dimension("dimension product overflows".into()))?;
            check_dimension(total)?;
        }
        Ok(DimSpec(dims))
    }

    pub fn single(d: usize) -> Result<Self> {
        DimSpec::new(vec![d])
    }

    pub fn qubits(n: usize) -> Result<Self> {
        DimSpec::new(vec![2; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// Number of subsystems.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Composite dimension `Π d_s`.
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn get(&self, s: usize) -> Option<usize> {
        self.0.get(s).copied()
    }

    /// Row-major strides: the composite index of `(i_1..i_N)` is `Σ i_s·stride_s`.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for s in (0..self.0.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.0[s + 1];
        }
        strides
    }

    /// Splits a composite index into per-subsystem digits.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for s in (0..self.0.len()).rev() {
            out[s] = index % self.0[s];
            index /= self.0[s];
        }
        out
    }

    /// Concatenation, checked against the cap.
    pub fn concat(&self, other: &DimSpec) -> Result<DimSpec> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        DimSpec::new(v)
    }

    /// Checks that a square operator of side `n` fits these dims.
    pub fn check_side(&self, n: usize) -> Result<()> {
        if n != self.total() {
            return Err(QuditError::Shape(format!(
                "operator side {n} does not match dims {self} (total {})",
                self.total()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for DimSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for DimSpec {
    type Err = QuditError;

    /// Comma-separated list, e.g. `2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let dims = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| QuditError::Parse(format!("bad dimension '{p}' in '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        DimSpec::new(dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DimSpec::new(vec![]).is_err());
        assert!(DimSpec::new(vec![2, 1]).is_err());
        assert!(DimSpec::new(vec![2; 13]).is_err());
        assert_eq!(DimSpec::new(vec![2; 12]).unwrap().total(), 4096);
    }

    #[test]
    fn strides_and_digits() {
        let d: DimSpec = "2,3,2".parse().unwrap();
        assert_eq!(d.strides(), vec![6, 2, 1]);
        assert_eq!(d.digits(7), vec![1, 0, 1]);
        assert_eq!(d.to_string(), "2,3,2");
        assert!("2,x".parse::<DimSpec>().is_err());
    }
}
