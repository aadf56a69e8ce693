//! Network sheaves and torsors over graphs, and the classification of
//! paradoxical figures by non-trivial torsor classes.

pub mod error;
pub mod gallery;
pub mod graph;
pub mod groups;
pub mod limits;
pub mod linalg;
pub mod paradox;
pub mod scalar;
pub mod sheaf;
pub mod torsor;

pub use error::{Error, Result};

/// Default exact scalar for the abelian pipeline.
pub type Int = num_bigint::BigInt;
pub type IntMatrix = linalg::IntegerMatrix<Int>;
pub type SmithForm = linalg::SmithForm<Int>;
pub type FgAbelianGroup = linalg::FgAbelianGroup<Int>;
pub type AbelianCohomology = sheaf::AbelianCohomology<Int>;
