pub mod bench;
pub mod combinatorics;
pub mod error;
pub mod games;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod lp;
mod modular;
pub mod pivot;
pub mod rational;

pub use error::{Error, Result};
