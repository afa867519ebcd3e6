//! Convex-hull membership with verifiable certificates.
//!
//! Given points `S = {v_1, …, v_n}` in `R^m` and a query `p`, the solvers in
//! this crate either express a point within `ε·R` of `p` as an explicit
//! convex combination of `S` (an approximate-membership certificate) or
//! produce a point of the hull strictly closer to every `v_i` than `p` is —
//! which pins down a separating hyperplane and brackets the distance from `p`
//! to the hull within a factor of two. Both answers can be re-verified from
//! the certificate alone, without trusting the solver.
//!
//! Modules:
//! - [`geometry`]: point sets, iterates, tolerances, and projection
//!   primitives.
//! - [`solver`]: the main pivot-iteration solver, certificates, stats, and
//!   the intersecting-balls adapter.
//! - [`variants`]: the coordinate-only virtual solver, its in-hull
//!   approximation, the growing-face algorithm, and auxiliary-pivot strategy
//!   rules.
//! - [`lp`]: LP feasibility (`Ax = b, x ≥ 0`) by reduction to membership,
//!   with sensitivity-based accuracy transfer, bounded-simplex augmentation,
//!   and a doubling scheme.
//! - [`oracle`]: a sparse-greedy baseline and an exact desk-scale
//!   nearest-point oracle for verification.
//! - [`rng`]: a small deterministic random stream for instance generation.

pub mod geometry;
pub mod lp;
pub mod oracle;
pub mod rng;
pub mod solver;
pub mod variants;

pub use geometry::{
    distance, pivot_predicate, project_to_segment, project_to_triangle, squared_distance,
    strict_pivot_predicate, GeometryError, Iterate, PivotRule, PointSet, QueryPoint, Tolerances,
};
pub use lp::{
    bounded_m_solve, doubling_rounds, doubling_solve, extract_x0, reduce_no_recession,
    residual_of, sensitivity_epsilon, two_phase_solve, DoublingRound, LpContext, LpError,
    LpInstance, LpMode, LpResult,
};
pub use oracle::{
    greedy_run, greedy_step, oracle_membership, oracle_nearest, GreedyState, MembershipVerdict,
    OracleError,
};
pub use rng::Stream;
pub use solver::{
    distance_bracket, find_pivot, separating_hyperplane, solve, solve_intersecting_balls,
    solve_with_options, triangle_step, BallSystem, BallsOutcome, Certificate, RunStats,
    SolveOptions, SolveRun, SolverError, StopReason,
};
pub use variants::{
    auxiliary_rule_wrap, avta_solve, delta_k_solve, solve_virtual, virtual_step, FaceSet,
    StrategyDecision, StrategyHistory, TriggerGeometry, VirtualOutcome,
};
