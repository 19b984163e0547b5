pub mod antiwick;
pub mod circle;
pub mod error;
pub mod experiments;
pub mod fields;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod sampling;
pub mod scalar;
pub mod torus;

pub use error::{Error, Result};
pub use scalar::Scalar;
