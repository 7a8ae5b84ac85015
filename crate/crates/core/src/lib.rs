pub mod check;
pub mod classify;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod gradings;
pub mod kinematics;
pub mod limits;
pub mod monomial;
pub mod numtheory;
pub mod pauli;

pub use check::Check;
pub use error::{Error, Result};
pub use limits::Limits;
