//! `gl_N`, its Chevalley–Eilenberg complex, primitive cocycles and invariant polynomials.

pub mod algebra;
pub mod exterior;
pub mod primitive;
pub mod sym;

pub use algebra::LieAlgebra;
pub use exterior::{ce_complex, ce_differential, ce_matrix, ExteriorBasis, ExteriorCochain};
pub use primitive::{primitive_element, restrict_to_block, trace_cochain};
pub use sym::{invariant_polynomials, power_trace, SymBasis, SymPolynomial};
