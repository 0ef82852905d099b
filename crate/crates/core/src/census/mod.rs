//! Component census of the nilfibre and the checks certifying it.

mod enumerate;
mod rank;
mod report;
mod verify;

pub use enumerate::{enumerate_components, ComponentRecord, Enumeration, DEFAULT_LIMIT};
pub use rank::{codim, orbit_closure_dim, orbit_closure_dim_with, rank, DEFAULT_BOUND, DEFAULT_SEED, DEFAULT_TRIALS};
pub use verify::{
    all_invariants, check_red_subset, global_red_multiset, is_submultiset, legal_moves, multiset_of, subcolumn_move,
    vanishing_on, verify_factorization, verify_krull_chain, verify_stage_lemmas, verify_trace_factorizations,
    verify_vanishing, FactorizationReport, KrullReport, Report, SubcolumnMove,
};
pub use report::{census, verify_composition, CensusOptions, CensusReport, ComponentJson, VerifyReport};
