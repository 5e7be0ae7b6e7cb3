//! Exact counting of Ising groundstates on triangulated convex polygons.
//!
//! Place a spin on every vertex of a triangulated convex n-gon and couple
//! every edge antiferromagnetically. No state can satisfy all three edges of
//! a triangle, so the best any face can do is frustrate exactly one of its
//! edges; a spin state achieving that on every face simultaneously is a
//! *satisfying state*, and the satisfying states are exactly the
//! groundstates. This crate counts them exactly:
//!
//! * [`degeneracy`] counts the satisfying states of any triangulation by
//!   decomposing it into a build plan of vertex insertions and polygon
//!   gluings, then pushing a four-component tally (the [`SatisfyingVector`])
//!   through the plan with the transfer matrices `W` and `Z` and the
//!   two-plan combination product. Arbitrary-precision integers keep the
//!   count exact at any size.
//! * [`brute_count_satisfying`] and friends recount small instances by
//!   sweeping all 2^n spin states, and [`count_intersecting_sets`]
//!   recounts them combinatorially; both serve as independent checks.
//! * [`strip_count`] and [`one_interior_count`] evaluate the closed
//!   Fibonacci formulas for strips and for triangulations with a single
//!   interior face, and [`phi_power_leq`] compares counts against powers of
//!   the golden ratio exactly, with no floating point.
//! * [`enumerate_triangulations`], [`random_triangulation`], and the `.tri`
//!   format round out the toolkit for sweeps and fixtures.
//!
//! ```
//! use trigon::{degeneracy, parse_tri, BigCount};
//!
//! let square = parse_tri("4\n1 3\n").unwrap();
//! assert_eq!(degeneracy(&square), BigCount::from(10u32));
//! ```

pub mod catalog;
pub mod construct;
pub mod dot;
pub mod oracle;
pub mod plan;
pub mod spin;
pub mod transfer;
pub mod triangulation;

pub use catalog::{
    catalan, catalan_table, enumerate_triangulations, parse_tri, random_triangulation,
    sample_triangulation, serialize_tri, triangulation_count, triangulation_rank,
    unrank_triangulation, CatalogError, TriParseError, TriangulationId, TriangulationStream,
};
pub use construct::{
    apply_op, apply_w, apply_z, decompose, dual_tree, evaluate_plan, merge, strip_chain_bottoms,
    strip_decompose, ConstructError, DualNode, DualTree, MergeStep, Step, StripDecomposition,
    StripError,
};
pub use dot::{dual_tree_dot, triangulation_dot};
pub use oracle::{
    brute_count_satisfying, count_intersecting_sets, face_frustration, frustrated_edges,
    groundstate_census, is_satisfying, minimum_energy_states, minimum_face_frustration_states,
    satisfying_states, GroundstateCensus, OracleError, SpinState, MAX_BRUTE_VERTICES,
    MAX_INTERSECTING_VERTICES,
};
pub use plan::{
    ops_string, parse_ops, Op, OpsParseError, Plan, PlanId, PlanNode, PlanParseError,
};
pub use spin::{BigCount, SatisfyingVector, Spin, SpinPair, TransferMatrix};
pub use transfer::{
    apply_op_vector, bullet, ceil_phi_power, degeneracy, fibonacci, lucas, one_interior_count,
    pair_swap_matrix, phi_power_leq, satisfying_matrix, satisfying_vector, satisfying_vector_at,
    strip_count, transfer_matrix, transfer_matrix_from_predicate, FibCache, TransferError,
};
pub use triangulation::{
    violations, BoundaryEdge, Face, NotABoundaryEdge, Triangulation, Violation,
};
