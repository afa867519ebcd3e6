//! Gap-vs-iteration trace files: one row per executed step with the gap
//! after the step, the pivot id that produced it, and the pivot angle.
//! Pivot ids at or above the instance size refer to auxiliary points
//! inserted by strategy rules; solvers that do not record per-step pivot
//! ids (the coordinate-only, growing-face, and greedy runs) leave those
//! fields empty.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use hullcheck_core::RunStats;

/// The trace rows for one run. `pivot_ids`, when present, must align with
/// the recorded steps.
pub fn format_trace(stats: &RunStats, pivot_ids: Option<&[usize]>) -> String {
    let mut out = String::from("iter,gap,pivot_index,pivot_angle\n");
    // gap_series[0] is the starting gap; entry i >= 1 is the gap after step i.
    for step in 1..stats.gap_series.len() {
        let _ = write!(out, "{step},{}", stats.gap_series[step]);
        match pivot_ids.and_then(|ids| ids.get(step - 1)) {
            Some(id) => {
                let _ = write!(out, ",{id}");
            }
            None => out.push(','),
        }
        match stats.pivot_angle_series.get(step - 1) {
            Some(angle) => {
                let _ = write!(out, ",{angle}");
            }
            None => out.push(','),
        }
        out.push('\n');
    }
    out
}

pub fn write_trace(path: &Path, stats: &RunStats, pivot_ids: Option<&[usize]>) -> Result<()> {
    std::fs::write(path, format_trace(stats, pivot_ids))
        .with_context(|| format!("could not write {}", path.display()))
}
