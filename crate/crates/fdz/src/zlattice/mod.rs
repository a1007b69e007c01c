//! Exact integer linear algebra and finitely generated abelian group
//! arithmetic. Everything downstream reduces to this layer.

pub mod group;
pub mod matrix;
pub mod normal;

pub use group::{
    canonical_rows, express_rows_in, reduce_by_rows, AbGroupPresentation, AbInvariants, Index,
    QuotientData, Subgroup,
};
pub use matrix::{vec_add, vec_is_zero, vec_of_i64, vec_scale, vec_sub, IntMatrix};
pub use normal::{
    det_abs, ext_gcd, express_in_rows, hnf, inverse_unimodular, invariant_factors, is_unimodular,
    kernel_basis, snf, solve, SmithDecomposition,
};
