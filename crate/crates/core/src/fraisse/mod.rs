//! Finite relational structures, Fraisse class properties, partial
//! isomorphism pairs, limit chains and Fraissefication.

mod amalgam;
mod chain;
mod class;
mod embed;
mod fraissefy;
mod io;
mod pairs;
mod structure;

pub use amalgam::{find_amalgam, for_each_amalgam, Amalgam, Membership, Span, MEMBERSHIP_SIZE_LIMIT};
pub use embed::{
    automorphisms, enumerate_embeddings, enumerate_embeddings_with, find_embedding, is_isomorphic, is_isomorphic_with,
    Budget, Embedding, SEARCH_BUDGET,
};
pub use structure::{next_permutation, subsets_of_size, FiniteStructure, Signature, Tuple, CANONICAL_FORM_LIMIT, DEFAULT_MAX_ARITY};
pub use chain::{fraisse_chain, task_realized_in, ChainResult, ExtensionTask, CHAIN_TASKS_PER_STEP};
pub use class::{
    check_class_property, check_class_property_with, Bounds, ClassProperty, Outcome, StructureClass, Witness, PROPERTY_BUDGET,
};
pub use fraissefy::{check_ultrahomogeneous, fraissefy, group_closure, Ultrahomogeneity, FRAISSEFY_SIZE_LIMIT};
pub use io::{parse_class, parse_permutations, parse_structure_file, print_class, print_structure};
pub use pairs::{
    build_pair_class, check_pair_property, check_pair_property_with, combined_map, enumerate_pair_embeddings,
    for_each_pair_embedding, joint_pair_embedding, pair_amalgamates, pair_embeds, pairs_up_to, PairProperty, PartialIsoPair,
};
