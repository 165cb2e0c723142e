//! Exact combinatorial invariants of normal surface singularities from
//! weighted dual resolution graphs.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals);
//! no floating point is used anywhere in the computational core.

pub mod bounds;
pub mod chimin;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod oracle;
pub mod parse;
pub mod verify;

pub use bounds::{
    ac_bound, almost_cone_profile, br_bound_report, connecting_cycle_w, elliptic_sequence,
    lambda_exact, restricted_b, vanishing_condition, zariski_formula, AcBoundValue, AcCase,
    AlmostCone, AlmostConeProfile, BoundItem, BoundReport, ConditionMode, ConditionVerdict,
    LambdaValue,
};
pub use chimin::{minimize_chi_shifted, ChiMinimum};
pub use error::{Error, Result};
pub use graph::{BlowUp, BlowUpSite, CanonicalDegrees, Cycle, QCycle, ResolutionGraph, Validation};
pub use lattice::{
    ccc_decompose, computation_sequence, enumerate_b, fundamental_cycle, genus_invariants,
    is_chain_connected, minimal_model, CCCDecomposition, ChainSet, GenusInvariants,
};
pub use parse::{parse_document, parse_graph, ParsedDocument};
