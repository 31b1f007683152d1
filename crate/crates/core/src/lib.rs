pub mod dynamics;
pub mod error;
pub mod mathieu;
pub mod model;
pub mod perturbation;
pub mod revival;
pub mod tridiag;

pub use error::{Error, Result};
