//! Nilpotent Lie algebras built by successive central extensions, in exact arithmetic.

pub mod catalog;
pub mod classify;
pub mod cohomology;
pub mod error;
pub mod exec;
pub mod extension;
pub mod forms;
pub mod hall;
pub mod lie;
pub mod linalg;
pub mod orbits;
pub mod scalar;

pub use error::{Error, Result};
pub use exec::Exec;
pub use forms::ExteriorForm;
pub use lie::LieAlgebra;
pub use linalg::{Matrix, Subspace, Vector};
pub use scalar::Scalar;
