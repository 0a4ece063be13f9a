//! Exact linear algebra over the rationals and prime fields.

mod complex;
mod field;
mod matrix;

pub use complex::{solve_combination, ChainComplex, HomologyBasis};
pub use field::{parse_rational, serialize_scalars, FieldSpec, Scalar};
pub use matrix::{kernel_basis, rank, Echelon, Matrix, SparseVec};
