//! Exact, brute-force verification tooling for union-closed families.
//!
//! The crate covers four related pieces:
//!
//! - [`family`]: set families over universes of at most 128 elements, union
//!   closure, element frequencies and abundance;
//! - [`graph`] and [`stable`]: bipartite graphs, maximal stable sets, rare
//!   vertices, and the rare-vertex/abundant-element correspondence;
//! - [`symmetry`] and [`zoo`]: class-swapping automorphisms and generators for
//!   grids, cylinders, tori and a few other bipartite families;
//! - [`translates`]: families of cyclic translates, suitable indices and the
//!   anchor shift, with their explicit automorphisms.
//!
//! [`io`] holds the JSON and text file formats and [`sweep`] the parameter
//! sweeps used by the CLI and the acceptance suite.

pub mod bitset;
pub mod error;
pub mod family;
pub mod graph;
pub mod io;
pub mod limits;
pub mod stable;
pub mod sweep;
pub mod symmetry;
pub mod translates;
pub mod zoo;

pub use bitset::ElemSet;
pub use error::{Error, Result};
pub use family::{
    abundant_elements, element_frequency, is_union_closed, make_family, union_closure, verify_ucc,
    SetFamily, UccReport,
};
pub use graph::{incidence_family, incidence_graph, BipartiteGraph, Side, Vertex};
pub use limits::Limits;
pub use stable::{
    check_prop1, graph_satisfies_ucc, maximal_stable_sets, rare_vertices, StableSetCollection,
};
pub use symmetry::{
    find_swap_automorphism, is_automorphism, is_swap_automorphism, rare_pair_via_swap, SwapSearch,
    VertexBijection,
};
pub use translates::{
    apply_shift, augmented_incidence_graph, cyclic_translates, enumerate_suitable,
    prop4_automorphism, standard_shift_index, thm_automorphism, validate_suitable, ShiftedFamily,
    SuitableIndex, TranslateFamily,
};
pub use zoo::{canonical_swap_map, generate, GridSpec};
