pub mod cli;
pub mod clifford;
pub mod element;
pub mod error;
pub mod field_series;
pub mod json;
pub mod lie_ymp;
pub mod linalg;
pub mod matrix_rep;
pub mod newton;
pub mod scalar;

pub use error::{Error, Result};
