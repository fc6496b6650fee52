//! coverlife-core: maximize the lifetime of a wireless sensor network
//! that must keep every target monitored.
//!
//! Each sensor carries a battery budget; any set of sensors whose sensing
//! disks jointly contain all targets is a *cover*, and a *schedule*
//! activates covers one after another, charging each activation's
//! duration against its members' batteries. The objective is the total
//! scheduled duration — the time until the network can no longer watch
//! everything. Covers may reuse sensors, so good schedules mix many
//! overlapping covers rather than partitioning the network.
//!
//! The crate provides, in rough order of sophistication:
//!
//! * [`model`] — instances, coverage matrices, covers, schedules, and the
//!   shared operations (validation, minimalization, upper bound);
//! * [`instance_gen`] — reproducible random deployments from a seeded
//!   [`instance_gen::SplitMix64`] stream;
//! * [`greedy`] — the scheduling loop with four cover generators
//!   (`hef`, `cardei`, `bgop`, `first_fit`) and granularity parameter w;
//! * [`gk`] — a Garg–Könemann-style fractional packing baseline plus the
//!   ε↔w correspondence;
//! * [`oracle`] — exact optima for small instances via minimal-cover
//!   enumeration and a dense simplex;
//! * [`harness`] — the experiment grid driver with CSV/plot emission
//!   behind the `coverlife` CLI.

pub mod bitset;
pub mod gk;
pub mod greedy;
pub mod harness;
pub mod instance_gen;
pub mod model;
pub mod oracle;
mod simplex;

pub use bitset::BitSet;
pub use gk::{epsilon_for_w, min_cost_cover, run_gk, w_for_epsilon, GkConfig, GkError};
pub use greedy::{
    bgop_generate_cover, cardei_generate_cover, first_fit_generate_cover, hef_generate_cover,
    run_greedy, Generator, GreedyConfig, GreedyError, SolveResult,
};
pub use harness::{
    derive_seed, effective_w, emit_csv, emit_plot_data, run_experiment, solve_one, write_outputs,
    Algorithm, AggregateRow, ExperimentResult, ExperimentSpec, HarnessError, RunRecord,
};
pub use instance_gen::{generate, GenConfig, GenError, SplitMix64};
pub use model::{
    critical_target, is_cover, max_lifetime, minimalize_cover, upper_bound, validate_schedule,
    CoverageMatrix, Instance, ModelError, Schedule, ScheduleEntry, SensorCover, ValidationReport,
    DEFAULT_TOLERANCE,
};
pub use oracle::{
    enumerate_minimal_covers, exact_optimum, lp_optimal_lifetime, CoverSet, LpSolution,
    OracleError, DEFAULT_COVER_LIMIT,
};
