//! Exact adjacency spectra of simple graphs, friendship graphs, and an
//! exhaustive search for cospectral mates.
//!
//! The [`graph`] module holds the bit-packed graph type; [`canon`] computes
//! canonical forms; [`charpoly`] computes characteristic polynomials over the
//! integers; [`spectrum`] holds the floating-point eigensolver and Hong's
//! bound; [`friendship`] builds `F_n` and its known mate; [`enumerate`]
//! generates isomorphism classes; [`proof`] replays the spectral
//! characterisation of `F_n` step by step on a concrete graph.

pub mod canon;
pub mod charpoly;
pub mod cli;
pub mod enumerate;
pub mod friendship;
pub mod graph;
pub mod graph6;
pub mod proof;
pub mod spectrum;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm, CanonicalLabeling};
pub use charpoly::{are_cospectral, char_poly, edges_from_charpoly, triangles_from_charpoly, CharPoly, CharPolyError};
pub use enumerate::{
    collect_graphs, enumerate_graphs, find_cospectral_mates, find_cospectral_mates_in, verify_ds,
    verify_ds_assuming_lemma, EnumerateError, EnumerationConfig, EnumerationTask, MateReport,
};
pub use friendship::{
    build_friendship, closed_form_charpoly, closed_form_radius, f16_mate, figure2_graph, is_friendship, radius_ceil,
    FriendshipParams, ZeroTriangles,
};
pub use graph::{DegreeSequence, Graph, GraphBuilder, GraphError};
pub use graph6::{from_graph6, from_graph6_str, to_graph6, to_graph6_string, Graph6Error};
pub use proof::{
    adjacent_degree2_pair, check_adjacent_deg2_on, check_adjacent_deg2_theorem, check_min_degree_lemma,
    run_main_theorem_pipeline, EmpiricalCheck, LemmaCheck, ProofReport, ProofStep, Verdict,
};
pub use spectrum::{
    eigenvalues, hong_bound, hong_equality_case, spectral_radius, HongClass, HongReport, SpectrumError, SpectrumSummary,
};
