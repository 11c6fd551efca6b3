//! Verification machinery: exhaustive instance enumeration, misreport
//! checking, worst-case ratio sweeps in exact arithmetic, empirical checks
//! of the analytic cost bounds, and a backtracking search over mechanism
//! tables that machine-checks impossibility results.

mod bounds;
mod enumerate;
mod search;
mod sp;
mod sweep;

pub use bounds::{check_mc_pair_bound, check_mc_triple_bound, check_sc_bound, BoundViolation};
pub use enumerate::{enumerate_instances, EmptyNodes, InstanceFamily, PrefDomain};
pub use search::{
    capped_solutions, search_tables, verify_table, ProfileFamily, TableConstraintViolation,
    TableSearchResult,
};
pub use sp::{check_family, check_strategyproof, SpReport, SpViolation};
pub use sweep::{ratio_sweep, ratio_sweep_with, MaxRatio, RatioReport, SweepRecord};
