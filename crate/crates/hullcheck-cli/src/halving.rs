//! The ε-halving membership driver: run cheaply at ε = 0.5 first, then halve
//! the accuracy target, warm-starting each level from the previous iterate,
//! until either some level produces a witness (the query is outside — the
//! witness property does not depend on ε) or the floor level 2⁻³⁰ still
//! certifies an approximate solution (the query is declared a member).

use hullcheck_core::{
    solve_with_options, Certificate, Iterate, PivotRule, PointSet, QueryPoint, RunStats,
    SolveOptions, Tolerances,
};
use serde::Serialize;

/// The last accuracy level the driver runs.
pub const HALVING_FLOOR: f64 = 1.0 / 1_073_741_824.0; // 2^-30

/// One level of the driver, for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct HalvingLevel {
    pub eps: f64,
    pub verdict: String,
    pub iterations: usize,
    pub gap: f64,
}

/// Runs the driver. Uses the best-angle pivot rule throughout — the levels
/// exist to reach tiny accuracy targets cheaply, and the best pivot is the
/// one with the per-step contraction guarantee. `base` supplies the
/// remaining knobs (budget, refresh period); its `eps` and `pivot_rule` are
/// overridden level by level.
///
/// Because each level warm-starts from the previous iterate, the per-level
/// series join into one continuous trajectory; the returned stats carry that
/// concatenation together with totals over all levels, so they describe the
/// whole run, not just its last level. The observed visibility is the worst
/// over levels that executed a step.
pub fn halving_driver(
    s: &PointSet,
    p: &QueryPoint,
    base: &Tolerances,
) -> (Certificate, RunStats, Vec<HalvingLevel>) {
    let mut eps = 0.5;
    let mut warm: Option<Iterate> = None;
    let mut levels = Vec::new();
    let mut totals = RunStats {
        observed_nu: 1.0,
        observed_c: 0.0,
        ..RunStats::default()
    };
    let mut saw_rated_level = false;
    loop {
        let mut tol = base.clone();
        tol.eps = eps;
        tol.pivot_rule = PivotRule::BestAngle;
        let run = solve_with_options(
            s,
            p,
            &tol,
            SolveOptions {
                warm_start: warm.take(),
                ..SolveOptions::default()
            },
        );
        totals.iterations += run.stats.iterations;
        totals.pivot_scans += run.stats.pivot_scans;
        // Level f's first gap entry repeats level f-1's last (same iterate).
        let skip = usize::from(!totals.gap_series.is_empty());
        totals
            .gap_series
            .extend(run.stats.gap_series.iter().skip(skip));
        totals
            .pivot_angle_series
            .extend(run.stats.pivot_angle_series.iter());
        if run.stats.iterations > 0 {
            totals.observed_nu = if saw_rated_level {
                totals.observed_nu.max(run.stats.observed_nu)
            } else {
                run.stats.observed_nu
            };
            saw_rated_level = true;
        }
        levels.push(HalvingLevel {
            eps,
            verdict: run.certificate.kind_name().to_string(),
            iterations: run.stats.iterations,
            gap: run.final_iterate.gap(),
        });
        let done = match &run.certificate {
            Certificate::ApproxSolution { .. } => eps <= HALVING_FLOOR,
            Certificate::Witness { .. } | Certificate::Inconclusive { .. } => true,
        };
        if done {
            totals.observed_c = 1.0 / (totals.observed_nu * totals.observed_nu) - 1.0;
            return (run.certificate, totals, levels);
        }
        warm = Some(run.final_iterate);
        eps /= 2.0;
    }
}
