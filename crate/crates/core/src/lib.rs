//! Computation and exhaustive verification of finite homomorphism
//! dualities.
//!
//! Two arenas instantiate one engine: explicit finite lattices, checked
//! exhaustively, and the homomorphism order of finite digraphs, checked
//! over a bounded universe of canonical cores. On top of them the engine
//! provides duality pairs and finite dualities, transversals and their
//! bijection with right sides, duality construction from right duals of
//! components, gap characterizations, weak-left-dual membership, maximal
//! antichain extraction, splitting, and a bounded sparse-incomparability
//! check.

pub mod antichain;
pub mod backend;
pub mod canon;
pub mod digraph;
pub mod duality;
pub mod io;
pub mod lattice;
pub mod poset;

pub use antichain::{
    antichain_from_duality, antichain_split, duality_from_antichain, duality_pairs, gap_witness,
    gaps, gaps_via_duality_formula, in_down_wld, sia_check, sia_sweep, wld_membership, wld_set,
    AntichainDuality, SiaOutcome, SiaSweep, WldMembership,
};
pub use backend::{DigraphBackend, EngineError, LatticeBackend, OrderBackend};
pub use canon::{
    canonical_form, canonical_key, enumerate_digraphs, enumeration_counts, is_isomorphic,
    CanonicalKey, DEFAULT_ENUMERATION_CAP, MAX_CANON_VERTICES,
};
pub use digraph::{
    coproduct, core_of, exponential, find_hom, hom_exists, is_core, is_forest_orientation, product,
    weak_components, Digraph, DigraphError, Hom, DEFAULT_EXPONENTIAL_CAP,
};
pub use duality::{
    build_duality, build_duality_with, check_transversal_bijection, component_set, decompose_right,
    duality_of_transversal, duality_spec, is_duality_pair, is_finite_duality, quasitransversals,
    r_of_transversal, right_dual_of, transversal_of_r, transversals, BijectionReport, DualitySpec,
    DualityStatus, ElemPairs, Transversal,
};
pub use lattice::{
    downset_lattice, downset_lattice_with_cap, is_lattice, CheckOutcome, ConnectedSet,
    FiniteLattice, HeytingTable, LatticeError, DEFAULT_DOWNSET_CAP,
};
pub use poset::{FinitePoset, PosetError};
