//! Exact computations around the p-adic Borel regulator: Lie algebra
//! cohomology of `gl_N`, the Weil algebra and its suspension, the
//! infinitesimal classifying space, the maps `Phi`/`Psi`, and Lazard's
//! saturated group algebra with Mahler/Amice calculus.

pub mod arith;
pub mod lazard;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod simplicial;
pub mod weil;

pub use error::{Error, Result};
