//! Exact integer linear algebra: Smith and Hermite forms, kernels, saturation and
//! lattice indices. Everything is arbitrary precision.

mod lattice;
mod matrix;
pub mod rational;
mod snf;

pub use lattice::{hermite_rows, kernel_basis, lattice_index, lattice_rank, saturate, Lattice, LatticeIndex};
pub use matrix::{add_vec, dot, int_vec, is_zero_vec, neg_vec, scale_vec, sub_vec, to_i64_vec, IntMatrix, IntVec};
pub use snf::{kernel_vectors, smith_normal_form, Smith};
