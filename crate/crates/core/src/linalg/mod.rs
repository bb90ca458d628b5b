//! Exact linear algebra and the cochain-complex engine.

pub mod complex;
pub mod elim;
pub mod homotopy;
pub mod random;
pub mod sparse;

pub use complex::{CohomologyBasis, CohomologyClass, FiniteComplex, ShortExactSequence};
pub use elim::{kernel, rank, solve, Echelon, Rref};
pub use homotopy::{null_homotopy_solve, ChainMap, Homotopy};
pub use sparse::{SparseMatrix, Vector};
