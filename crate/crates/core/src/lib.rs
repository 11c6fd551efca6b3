//! Deterministic strategyproof mechanisms for locating two heterogeneous
//! facilities at distinct nodes of a discrete line, together with the
//! machinery needed to verify them: brute-force optimality oracles,
//! exhaustive misreport checking, worst-case approximation-ratio sweeps in
//! exact rational arithmetic, and a backtracking search over mechanism
//! tables that machine-checks impossibility bounds.
//!
//! Agents occupy distinct nodes of a line with `m` nodes (positions are
//! public) and privately approve a subset of the two facilities. Given a
//! feasible solution, an ordered pair of distinct nodes, an agent's cost
//! is her total distance to the facilities she approves. Mechanisms map
//! instances to feasible solutions; the interesting questions are whether
//! truthful reporting is optimal for every agent, and how far the outcome
//! can drift from the minimum social cost or maximum cost.
//!
//! All bounds checked here are exact rationals; no floating point is used
//! anywhere a comparison matters.

pub mod error;
pub mod instance;
pub mod mechanisms;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
pub use instance::{
    agent_cost, max_cost, mirror_instance, mirror_solution, occupied_window, social_cost, Agent,
    ApprovalPair, Cost, Facility, LineInstance, NodeIndex, Objective, OccupiedWindow, Solution,
};

/// Exact fraction used for every ratio and bound comparison.
///
/// Stored in lowest terms with a positive denominator; comparisons are by
/// cross-multiplication. The quantities involved are tiny (instance costs
/// at desk scale), so 64-bit components are ample.
pub type Rational = num_rational::Ratio<i64>;
