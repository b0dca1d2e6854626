pub mod acceptance;
pub mod chsh;
pub mod error;
pub mod generators;
pub mod json;
pub mod linalg;
pub mod multipartite;
pub mod ops;
pub mod quantifiers;
pub mod random;
pub mod states;
pub mod teleport;

pub use error::{QuditError, Result};
pub use linalg::{Matrix, C64};
