pub mod coeff;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod parse;
pub mod poincare;
pub mod ring;
pub mod stdbasis;

pub use error::{Error, Result};
