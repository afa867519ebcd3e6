//! Command-line front end for the hull-membership solvers: file ingestion,
//! run configuration and dispatch, versioned JSON reports with re-verifiable
//! certificates, gap-trace files, an ε-halving membership driver, a seeded
//! benchmark harness, and sampled visibility diagnostics.

pub mod bench;
pub mod config;
pub mod generators;
pub mod halving;
pub mod ingest;
pub mod report;
pub mod runner;
pub mod trace;
pub mod visibility;

pub use bench::{format_bench_csv, run_bench, write_bench_csv, BenchConfig, BenchRow, Family};
pub use config::{Mode, RunConfig, Variant};
pub use halving::{halving_driver, HalvingLevel, HALVING_FLOOR};
pub use report::{
    exit_code_for, Report, EXIT_FEASIBLE, EXIT_INCONCLUSIVE, EXIT_INFEASIBLE, EXIT_INPUT_ERROR,
    SCHEMA,
};
pub use runner::{execute, RunInputs, RunOutput};
pub use trace::{format_trace, write_trace};
pub use visibility::{visibility_probe, VisibilityReport};
