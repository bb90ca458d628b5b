//! Lazard's saturated group algebra, Mahler series and distributions, enveloping
//! algebras and the standard complexes relating them.

pub mod enveloping;
pub mod group_algebra;
pub mod mahler;
pub mod shadow;
pub mod standard;

pub use group_algebra::{
    coproduct, divided_power, multi_indices, partial_element, primitivity_check, PrimitivityReport, TensorSquare,
    TruncatedGroupAlgebraElement, Truncation,
};
pub use mahler::{
    amice_transform, derivative_at_identity, distribution_from_series, local_analyticity_test, pair_distribution,
    random_mahler_series, AnalyticityVerdict, DerivativeRoutes, Distribution, MahlerSeries, PowerSeries,
};
pub use enveloping::{to_saturated, EnvelopingAlgebra, PbwWord, TruncatedEnvelopingElement};
pub use standard::{
    antisymmetrization_is_chain_map, antisymmetrization_matrix, group_change_of_variables, group_isomorphism_intertwines,
    AugmentedAlgebra, GroupAlgebraModel, KoszulComplex, StandardComplexes, TensorBasis,
};
pub use shadow::{regulator_shadow, ShadowReport};
