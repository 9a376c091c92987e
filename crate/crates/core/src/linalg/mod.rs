//! Exact dense linear algebra over the integers and rationals.

mod lattice;
mod matrix;
mod normal_form;

pub use lattice::{image_lattice, Lattice};
pub use matrix::{IMat, Matrix, QMat};
pub use normal_form::{
    det_exact, det_int, echelon_coords, echelon_coords_int, hnf, hnf_basis, hnf_with_transform,
    invariant_factors, inverse, kernel_basis, left_kernel, pivot_columns, rank_int, rank_rat, rref,
    snf, solve_left, solve_left_int, solve_right, SnfResult,
};
