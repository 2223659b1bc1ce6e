//! Surfaces of infinite type described by their genus and end space.

mod decompose;
mod expr;
mod named;
mod normal;
mod ordinal;
mod parse;

pub use decompose::{clopen_decompositions, is_self_similar_bounded, SelfSimilarity, DECOMPOSITION_BUDGET};
pub use expr::{
    list_ends, validate, validate_expr, EndDescriptor, EndKind, EndSpaceExpr, Genus, Invariant, Mark, Multiplicity,
    NodePath, Step, SurfaceSpec, Violation,
};
pub use named::{recognize_named, NamedSurface};
pub use normal::{
    canonical_countable, characteristic, embeds, germ_census, normal_form, normalize, CanonicalEndForm,
    Characteristic, CountablePart,
};
pub use ordinal::{OrdinalCNF, MAX_ORDINAL_DEPTH};
pub use parse::{parse_expr, parse_surface, parse_surface_or_expr, MAX_OMEGA_NESTING};
