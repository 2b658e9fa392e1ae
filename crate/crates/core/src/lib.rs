//! Exact computation of metaplectic nonsymmetric Macdonald polynomials
//! (SSV polynomials) for `GL_r` via alcove walks, with an independent
//! Hecke-operator oracle.

pub mod daha;
pub mod error;
pub mod field;
pub mod formulas;
pub mod golden;
pub mod laurent;
pub mod rootsys;
pub mod serialize;
pub mod verify;
pub mod walks;
pub mod words;

pub use error::{Error, Result};
