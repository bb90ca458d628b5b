//! The infinitesimal classifying space of `GL_N`, its normalization, and the maps `Φ`, `Ψ`.

pub mod maps;
pub mod model;
pub mod quotient;

pub use maps::{compare_phi_psi, phi_matrix, psi_matrix, InducedComparison, PhiPsiReport};
pub use model::{group_face, CosimplicialLevel, InfinitesimalModel};
pub use quotient::{normalized_iso_to_ce, NormalizationIso, NormalizationSummary, NormalizedComplex, QuotientModel};
