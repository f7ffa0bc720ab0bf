//! Exact integer linear algebra: normal forms and lattices in `Z^d`.

mod lattice;
mod matrix;
mod normal_form;

pub use lattice::{
    content, lattice_from_rows, lattice_intersect, lattice_member, quotient_structure, saturation, IntegerLattice,
    QuotientStructure,
};
pub use matrix::{format_rational, from_big, parse_rational, to_big, BigRat, IntMatrix, RatMatrix};
pub use normal_form::{hnf, hnf_basis, smith, snf, SmithDecomposition};
