//! Perfect matchings in orderable and separable k-hypergraphs.
//!
//! The crate provides:
//!
//! - a data model for hypergraphs, integer labelings, elimination orders,
//!   r-sequences and matchings, with canonical JSON formats ([`model`],
//!   [`json`]);
//! - polynomial-time recognition of orderable hypergraphs, the r-sequence
//!   perfect-matching criterion, and a matching construction ([`orderable`]);
//! - recognition of separable hypergraphs by exact rational LP feasibility,
//!   conversions between orders and separating labelings, and the separable
//!   but not orderable witness family ([`separable`], [`simplex`]);
//! - the 3-partition reduction and the 3-to-k lift with certificate maps in
//!   both directions ([`reductions`]);
//! - exponential-time oracles that ground-truth all of the above at desk
//!   scale ([`oracle`]), plus seeded instance generators ([`gen`]).

pub mod error;
pub mod gen;
pub mod json;
pub mod model;
pub mod oracle;
pub mod orderable;
pub mod reductions;
pub mod separable;
pub mod simplex;

pub use error::{Error, Result};
pub use model::{
    is_perfect_matching, materialize, subset_sum, Edge, EliminationOrder, Hypergraph, Labeling,
    Matching, RSequence, VertexRole,
};
pub use oracle::{
    brute_force_matching, brute_force_orderable, brute_force_separable, MembershipOracle,
};
pub use orderable::{
    classify_vertex, compute_r_sequence, construct_matching_orderable, decide_matching_orderable,
    find_elimination_order, verify_elimination_order, Classification, Recognition,
    RecognitionOutcome,
};
pub use reductions::{
    compute_b, lift_to_k, pull_back_matching, push_forward_matching, three_partition_to_geq,
    LiftOutcome, LiftedInstance, ShortcutReason, ThreePartitionOutcome,
};
pub use separable::{
    counterexample, find_separating_labeling, labeling_to_order_k2, order_to_labeling,
    DualCertificate, Separability,
};
