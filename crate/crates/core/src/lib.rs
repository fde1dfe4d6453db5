//! Exact sesquilinear and hermitian forms over finite-dimensional algebras with involution.

pub mod algebra;
pub mod budget;
pub mod cli;
pub mod coded;
pub mod error;
pub mod double_arrow;
pub mod extension;
pub mod field;
pub mod forms;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod ring;
pub mod search;
pub mod transfer;
pub mod witt;

pub use error::{Error, Result};

