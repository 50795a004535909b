//! Exact linear algebra over ℚ and GF(p).

mod matrix;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::{
    add_vectors, is_zero_vector, rref, scale_vector, sub_vectors, tensor_vectors, unit_vector, LinearMap,
};
pub use scalar::{is_prime, FieldSpec, Scalar};
pub use sparse::{AffineSystem, Inconsistency};
pub use subspace::{quotient_with_section, Combine, Quotient, Subspace};

/// Sum or intersection of two subspaces of the same ambient space.
pub fn subspace_combine(u: &Subspace, v: &Subspace, mode: Combine) -> crate::Result<Subspace> {
    u.combine(v, mode)
}
