//! The versioned JSON report. Certificates are embedded whole — coefficient
//! vectors included — so any consumer can re-verify a verdict from the report
//! and the input files alone, without running this tool again.

use hullcheck_core::{DoublingRound, RunStats};
use serde::Serialize;

use crate::halving::HalvingLevel;

pub const SCHEMA: &str = "hullcheck/1";

/// Exit codes partition run outcomes: approximate solution / feasible,
/// witness / infeasible, inconclusive, input error.
pub const EXIT_FEASIBLE: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

/// Work counters and the observed visibility of one run. Counters are
/// deterministic; wall time is measured only when asked for, so default
/// reports are byte-identical across machines.
#[derive(Clone, Debug, Serialize)]
pub struct StatsReport {
    pub iterations: usize,
    pub pivot_scans: u64,
    pub initial_gap: Option<f64>,
    pub final_gap: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VisibilitySummary {
    /// Largest per-step pivot-angle sine over the run's rated steps.
    pub nu_observed: f64,
    /// `1/ν² − 1` for the run.
    pub c_observed: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    /// Present only when wall-clock measurement was requested.
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    /// The certificate kind: `approx_solution`/`witness`/`inconclusive` for
    /// membership, `approx_feasible`/`infeasible_certificate`/`inconclusive`
    /// for the LP modes, `coord_approx`/`general_witness` for the
    /// coordinate-only solver, `empty_intersection`/`intersection_point` for
    /// the balls mode.
    pub verdict: String,
    pub certificate: serde_json::Value,
    pub stats: StatsReport,
    pub visibility: VisibilitySummary,
    pub timings: Timings,
    /// Per-level rows when the ε-halving driver ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halving: Option<Vec<HalvingLevel>>,
    /// Per-round rows in the doubling LP mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub doubling_rounds: Option<Vec<DoublingRound>>,
}

impl Report {
    pub fn new(verdict: String, certificate: serde_json::Value, stats: &RunStats) -> Self {
        Self {
            schema: SCHEMA,
            verdict,
            certificate,
            stats: StatsReport {
                iterations: stats.iterations,
                pivot_scans: stats.pivot_scans,
                initial_gap: stats.gap_series.first().copied(),
                final_gap: stats.gap_series.last().copied(),
            },
            visibility: VisibilitySummary {
                nu_observed: stats.observed_nu,
                c_observed: stats.observed_c,
            },
            timings: Timings { wall_ms: None },
            halving: None,
            doubling_rounds: None,
        }
    }

    /// The serialized report: pretty-printed JSON plus a trailing newline.
    /// Number formatting is shortest-round-trip, so equal values give equal
    /// bytes and fixed seeds give byte-identical files.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Maps a verdict kind name to the process exit code.
pub fn exit_code_for(verdict: &str) -> i32 {
    match verdict {
        "approx_solution" | "approx_feasible" | "coord_approx" | "empty_intersection" => {
            EXIT_FEASIBLE
        }
        "witness" | "infeasible_certificate" | "general_witness" | "intersection_point" => {
            EXIT_INFEASIBLE
        }
        _ => EXIT_INCONCLUSIVE,
    }
}
