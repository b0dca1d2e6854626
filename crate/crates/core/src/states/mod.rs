//! State vectors, density operators, Bloch coordinates and named states.

mod bloch;
pub mod catalog;
mod density;
mod dims;
mod ket;
mod qutrit;

pub use bloch::{
    bloch_from_dm, bloch_from_dm_with, dm_from_bloch, dm_from_bloch_with, dm_from_qubit_bloch,
    qubit_bloch_vector, BlochCoeffs, BLOCH_POSITIVITY_TOL, BLOCH_TRACE_TOL,
};
pub use catalog::{Bell, NamedState, State};
pub use density::{
    dephase, dm_from_ket, purity_class, validate_density, DensityOp, PurityClass, PurityKind,
    HERMITICITY_TOL, POSITIVITY_TOL, PURE_TOL, TRACE_TOL,
};
pub use dims::DimSpec;
pub use ket::{canonical_phase, Ket, KET_NORM_TOL};
pub use qutrit::{
    dm_from_qutrit_vector, qutrit_char_coeffs, qutrit_coherence_vector, star_product, QutritCoeffs,
    DET_CHECK_TOL,
};
