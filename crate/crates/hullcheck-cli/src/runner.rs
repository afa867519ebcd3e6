//! Dispatch: one validated configuration plus ingested inputs, one report
//! and exit code. Input problems surface as `Err` (exit 3); solver outcomes
//! — including inconclusive ones — are regular reports.

use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use hullcheck_core::{
    avta_solve, bounded_m_solve, delta_k_solve, distance, doubling_rounds, greedy_run,
    solve_intersecting_balls, solve_virtual, solve_with_options, two_phase_solve, BallSystem,
    BallsOutcome, Certificate, PointSet, QueryPoint, RunStats, SolveOptions, VirtualOutcome,
};
use serde_json::to_value;

use crate::config::{Mode, RunConfig, Variant};
use crate::halving::halving_driver;
use crate::report::{exit_code_for, Report};

/// Ingested inputs plus the flags that modify a run.
#[derive(Default)]
pub struct RunInputs {
    pub points: Option<PointSet>,
    pub query: Option<QueryPoint>,
    /// Columns of `A` and the right-hand side, for the LP modes.
    pub lp: Option<(PointSet, Vec<f64>)>,
    /// Simplex bound for the bounded-M mode.
    pub big_m: Option<f64>,
    /// Doubling cap for the doubling mode.
    pub mu_cap: Option<f64>,
    /// Run the ε-halving driver instead of a single solve.
    pub halving: bool,
    /// Measure wall-clock time (off by default so reports stay
    /// byte-identical across machines).
    pub wall_time: bool,
}

/// Everything main needs to finish: the report, the exit code, and the trace
/// series when the run recorded one.
pub struct RunOutput {
    pub report: Report,
    pub exit_code: i32,
    pub stats: RunStats,
    /// Per-step pivot ids when the solver records them.
    pub pivot_ids: Option<Vec<usize>>,
}

fn membership_inputs(inputs: &RunInputs) -> Result<(&PointSet, &QueryPoint)> {
    let s = inputs
        .points
        .as_ref()
        .ok_or_else(|| anyhow!("--points is required for this mode"))?;
    let p = inputs
        .query
        .as_ref()
        .ok_or_else(|| anyhow!("--query is required for this mode"))?;
    if s.dim() != p.dim() {
        bail!(
            "dimension mismatch: points have dimension {} but the query has {}",
            s.dim(),
            p.dim()
        );
    }
    Ok((s, p))
}

fn certificate_verdict(c: &Certificate) -> String {
    c.kind_name().to_string()
}

/// Kind name for the coordinate-only outcomes (they carry no method of
/// their own).
pub fn virtual_kind(v: &VirtualOutcome) -> &'static str {
    match v {
        VirtualOutcome::CoordApprox { .. } => "coord_approx",
        VirtualOutcome::GeneralWitness { .. } => "general_witness",
        VirtualOutcome::Inconclusive { .. } => "inconclusive",
    }
}

fn balls_verdict(b: &BallsOutcome) -> &'static str {
    match b {
        BallsOutcome::EmptyIntersection { .. } => "empty_intersection",
        BallsOutcome::IntersectionPoint { .. } => "intersection_point",
        BallsOutcome::Inconclusive { .. } => "inconclusive",
    }
}

/// Runs one configured solve and assembles the report.
pub fn execute(config: &RunConfig, inputs: &RunInputs) -> Result<RunOutput> {
    config.validate()?;
    if inputs.halving && (config.mode != Mode::Membership || config.variant != Variant::Triangle) {
        bail!(
            "--halving drives the plain membership solver only (got variant {}, mode {})",
            config.variant,
            config.mode
        );
    }
    let started = Instant::now();
    let mut output = match config.mode {
        Mode::Membership => run_membership(config, inputs)?,
        Mode::LpNoRecession | Mode::LpBoundedM | Mode::LpDoubling => run_lp(config, inputs)?,
        Mode::Balls => run_balls(config, inputs)?,
    };
    if inputs.wall_time {
        output.report.timings.wall_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    Ok(output)
}

fn run_membership(config: &RunConfig, inputs: &RunInputs) -> Result<RunOutput> {
    let (s, p) = membership_inputs(inputs)?;
    let tol = config.tolerances().map_err(|e| anyhow!("{e}"))?;
    tol.validate(s.len()).map_err(|e| anyhow!("{e}"))?;

    if inputs.halving {
        let (certificate, stats, levels) = halving_driver(s, p, &tol);
        let verdict = certificate_verdict(&certificate);
        let mut report = Report::new(verdict.clone(), to_value(&certificate)?, &stats);
        report.halving = Some(levels);
        return Ok(RunOutput {
            exit_code: exit_code_for(&verdict),
            report,
            stats,
            pivot_ids: None,
        });
    }

    match config.variant {
        Variant::Triangle => {
            let run = solve_with_options(s, p, &tol, SolveOptions::default());
            let verdict = certificate_verdict(&run.certificate);
            let report = Report::new(verdict.clone(), to_value(&run.certificate)?, &run.stats);
            Ok(RunOutput {
                exit_code: exit_code_for(&verdict),
                report,
                stats: run.stats,
                pivot_ids: Some(run.pivot_trace),
            })
        }
        Variant::Virtual => {
            let (outcome, stats) = solve_virtual(s, p, &tol);
            let verdict = virtual_kind(&outcome).to_string();
            let report = Report::new(verdict.clone(), to_value(&outcome)?, &stats);
            Ok(RunOutput {
                exit_code: exit_code_for(&verdict),
                report,
                stats,
                pivot_ids: None,
            })
        }
        Variant::Avta => {
            let (certificate, stats) = avta_solve(s, p, &tol);
            let verdict = certificate_verdict(&certificate);
            let report = Report::new(verdict.clone(), to_value(&certificate)?, &stats);
            Ok(RunOutput {
                exit_code: exit_code_for(&verdict),
                report,
                stats,
                pivot_ids: None,
            })
        }
        Variant::DeltaK => {
            let (certificate, stats) = delta_k_solve(s, p, &tol);
            let verdict = certificate_verdict(&certificate);
            let report = Report::new(verdict.clone(), to_value(&certificate)?, &stats);
            Ok(RunOutput {
                exit_code: exit_code_for(&verdict),
                report,
                stats,
                pivot_ids: None,
            })
        }
        Variant::Greedy => {
            let (certificate, stats) = greedy_run(s, p, &tol);
            let verdict = certificate_verdict(&certificate);
            let report = Report::new(verdict.clone(), to_value(&certificate)?, &stats);
            Ok(RunOutput {
                exit_code: exit_code_for(&verdict),
                report,
                stats,
                pivot_ids: None,
            })
        }
    }
}

fn run_lp(config: &RunConfig, inputs: &RunInputs) -> Result<RunOutput> {
    let (a, b) = inputs
        .lp
        .as_ref()
        .ok_or_else(|| anyhow!("--lp-a and --lp-b are required for the LP modes"))?;
    let (result, stats, rounds) = match config.mode {
        Mode::LpNoRecession => {
            let (result, stats) = two_phase_solve(a, b, config.eps0);
            (result, stats, None)
        }
        Mode::LpBoundedM => {
            let m_bound = inputs
                .big_m
                .ok_or_else(|| anyhow!("--big-m is required for mode lp_boundedM"))?;
            let (result, stats) =
                bounded_m_solve(a, b, m_bound, config.eps).map_err(|e| anyhow!("{e}"))?;
            (result, stats, None)
        }
        Mode::LpDoubling => {
            let mu_cap = inputs
                .mu_cap
                .ok_or_else(|| anyhow!("--mu-cap is required for mode lp_doubling"))?;
            let (result, rounds, stats) =
                doubling_rounds(a, b, config.eps, mu_cap).map_err(|e| anyhow!("{e}"))?;
            (result, stats, Some(rounds))
        }
        _ => unreachable!("run_lp handles LP modes only"),
    };
    let verdict = result.kind_name().to_string();
    let mut report = Report::new(verdict.clone(), to_value(&result)?, &stats);
    report.doubling_rounds = rounds;
    Ok(RunOutput {
        exit_code: exit_code_for(&verdict),
        report,
        stats,
        pivot_ids: None,
    })
}

fn run_balls(config: &RunConfig, inputs: &RunInputs) -> Result<RunOutput> {
    let (s, p) = membership_inputs(inputs)?;
    if config.variant != Variant::Triangle {
        bail!(
            "the balls mode runs the plain solver; got variant {}",
            config.variant
        );
    }
    let tol = config.tolerances().map_err(|e| anyhow!("{e}"))?;
    tol.validate(s.len()).map_err(|e| anyhow!("{e}"))?;
    // The boundaries of the balls all pass through the query point, so each
    // radius is exactly the distance from the query to its center.
    let radii: Vec<f64> = s.iter().map(|c| distance(c, p.coords())).collect();
    let balls = BallSystem::new(s.clone(), radii, p.clone()).map_err(|e| anyhow!("{e}"))?;
    let outcome = solve_intersecting_balls(&balls, &tol);
    let verdict = balls_verdict(&outcome).to_string();
    let stats = match &outcome {
        BallsOutcome::EmptyIntersection { stats, .. }
        | BallsOutcome::IntersectionPoint { stats, .. }
        | BallsOutcome::Inconclusive { stats, .. } => stats.clone(),
    };
    let report = Report::new(verdict.clone(), to_value(&outcome)?, &stats);
    Ok(RunOutput {
        exit_code: exit_code_for(&verdict),
        report,
        stats,
        pivot_ids: None,
    })
}
