//! Isomorphism and automorphism search, homogeneity checks with
//! certificates, amalgamation checks, and the sampling and forcing harnesses.

mod homogeneity;
mod iso;
mod keylemma;
mod lemmas;
mod tap;
mod tournament;

pub use homogeneity::{
    brute_force_set_homogeneous, homogeneity_report, homogeneity_report_for_group, Certificate, HomReport, LevelFlags,
    MAX_HOMOGENEITY_VERTICES,
};
pub use iso::{
    all_isomorphisms, automorphism_group, canonical_form, exists_automorphism, find_isomorphism, hypergraph_automorphisms,
    hypergraph_isomorphism, is_isomorphism, preserves_edges, RelKind, StructuredSet, MAX_AUT_VERTICES,
};
pub use keylemma::{family_structure, key_lemma_trial, structure_kinds, CorePair, KeyLemmaReport, MAX_CORE};
pub use lemmas::{
    automorphism_breaking_edges, chain_ordering, edge_intersection_violations, m3_quad_pattern, null_subsets, root_split,
    star_partitions, QuadPattern,
};
pub use tap::{all_hypergraphs_up_to, check_tap, embeddings, is_embedding, substructure_class, TapFailure, TapInstance, TapMode, MAX_TAP_SIZE};
pub use tournament::{
    brute_force_model, check_derivation, is_model, parse_derivation, tournament_forcing_search,
    tournament_forcing_search_with, Arc, DerivationCheck, DerivationStep, TournamentOutcome, TraceStep, START_ARCS,
};
