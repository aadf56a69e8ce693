//! Exact integer linear algebra: dense matrices, Smith normal form, and the
//! kernel / cokernel / linear-system routines built on it.

mod matrix;
mod smith;

pub use matrix::IntegerMatrix;
pub use smith::{
    cokernel, kernel_basis, smith_normal_form, solve_integer_linear, FgAbelianGroup, SmithForm,
};
