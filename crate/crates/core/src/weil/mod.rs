//! The Weil algebra of a Lie algebra, its filtration and the suspension.

pub mod element;
pub mod slice;
pub mod suspension;

pub use element::{weil_differential, WeilDifferential, WeilElement, WeilMonomial};
pub use slice::{weil_cohomology, Filtration, WeilCohomology, WeilSlice};
pub use suspension::{ChernWeilClass, Suspended, Suspension};
