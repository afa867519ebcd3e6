//! The benchmark harness: a variant list crossed with a seeded instance
//! family. Rows are aggregated order-independently and sorted by
//! (instance id, variant) before emission, so the CSV bytes do not depend on
//! how many threads ran. `HULLCHECK_THREADS` caps parallelism; when it is
//! absent the harness stays single-threaded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use hullcheck_core::{
    avta_solve, delta_k_solve, greedy_run, solve_virtual, solve_with_options, PivotRule,
    PointSet, QueryPoint, RunStats, SolveOptions, Stream, Tolerances,
};
use rayon::prelude::*;

use crate::config::Variant;
use crate::generators;
use crate::trace::write_trace;

/// Which instance family the harness draws from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// Gaussian points, query inside the hull (Dirichlet combination).
    Feasible,
    /// Gaussian points, query at exact hull distance `shift`.
    Infeasible { shift: f64 },
    /// The unit square with the query at its center.
    Square,
    /// The unit square with a query keeping `B(p, rho)` inside the square.
    SquareBall { rho: f64 },
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "feasible" => Ok(Family::Feasible),
            "infeasible" => Ok(Family::Infeasible { shift: 0.5 }),
            "square" => Ok(Family::Square),
            "square-ball" | "square_ball" => Ok(Family::SquareBall { rho: 0.2 }),
            other => Err(format!(
                "unknown family {other:?}; expected one of feasible, infeasible, square, square-ball"
            )),
        }
    }
}

/// One harness invocation: every variant runs on every instance.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub variants: Vec<Variant>,
    pub pivot_rule: PivotRule,
    pub eps: f64,
    pub family: Family,
    /// Dimension and point count for the gaussian families (the square
    /// families fix their own geometry).
    pub m: usize,
    pub n: usize,
    pub count: usize,
    pub max_iters: usize,
    /// Growing-face width and virtual inner budget for those variants.
    pub k: usize,
    pub t: usize,
    pub seed: u64,
    /// Measure wall-clock time per run. Off by default: the wall column is
    /// left empty and the CSV is byte-reproducible.
    pub wall_time: bool,
    /// When set, a per-run gap trace lands here as
    /// `trace-<instance>-<variant>.csv`.
    pub trace_dir: Option<PathBuf>,
}

/// One (instance, variant) result row.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub instance: usize,
    pub variant: Variant,
    pub verdict: String,
    pub iterations: usize,
    pub pivot_scans: u64,
    pub wall_ms: Option<f64>,
    pub final_gap: f64,
    pub observed_nu: f64,
    pub observed_c: f64,
}

fn generate(family: Family, stream: &mut Stream, m: usize, n: usize) -> (PointSet, QueryPoint) {
    match family {
        Family::Feasible => {
            let (s, p, _) = generators::feasible_instance(stream, m, n);
            (s, p)
        }
        Family::Infeasible { shift } => generators::infeasible_instance(stream, m, n, shift),
        Family::Square => generators::square_instance(),
        Family::SquareBall { rho } => generators::square_ball_instance(stream, rho),
    }
}

fn run_one(
    variant: Variant,
    s: &PointSet,
    p: &QueryPoint,
    tol: &Tolerances,
) -> (String, RunStats, Option<Vec<usize>>) {
    match variant {
        Variant::Triangle => {
            let run = solve_with_options(s, p, tol, SolveOptions::default());
            (
                run.certificate.kind_name().to_string(),
                run.stats,
                Some(run.pivot_trace),
            )
        }
        Variant::Virtual => {
            let (outcome, stats) = solve_virtual(s, p, tol);
            (crate::runner::virtual_kind(&outcome).to_string(), stats, None)
        }
        Variant::Avta => {
            let (certificate, stats) = avta_solve(s, p, tol);
            (certificate.kind_name().to_string(), stats, None)
        }
        Variant::DeltaK => {
            let (certificate, stats) = delta_k_solve(s, p, tol);
            (certificate.kind_name().to_string(), stats, None)
        }
        Variant::Greedy => {
            let (certificate, stats) = greedy_run(s, p, tol);
            (certificate.kind_name().to_string(), stats, None)
        }
    }
}

fn bench_job(
    config: &BenchConfig,
    instance: usize,
    s: &PointSet,
    p: &QueryPoint,
    variant: Variant,
) -> Result<BenchRow> {
    let tol = Tolerances::new(config.eps)
        .map_err(|e| anyhow::anyhow!("bench eps rejected: {e}"))?
        .with_rule(config.pivot_rule)
        .with_max_iters(config.max_iters)
        .with_t_inner(config.t)
        .with_k_faces(config.k.min(s.len() + 1).max(2));
    // The growing-face width may not exceed n + 1; clamping keeps one matrix
    // of configurations usable across families of different sizes.
    tol.validate(s.len()).map_err(|e| anyhow::anyhow!("{e}"))?;
    let started = Instant::now();
    let (verdict, stats, pivot_ids) = run_one(variant, s, p, &tol);
    let wall_ms = config
        .wall_time
        .then(|| started.elapsed().as_secs_f64() * 1e3);
    if let Some(dir) = &config.trace_dir {
        let path = dir.join(format!("trace-{instance:04}-{}.csv", variant.name()));
        write_trace(&path, &stats, pivot_ids.as_deref())?;
    }
    Ok(BenchRow {
        instance,
        variant,
        verdict,
        iterations: stats.iterations,
        pivot_scans: stats.pivot_scans,
        wall_ms,
        final_gap: stats.gap_series.last().copied().unwrap_or(f64::NAN),
        observed_nu: stats.observed_nu,
        observed_c: stats.observed_c,
    })
}

/// Reads the parallelism cap. Absent means single-threaded; a present but
/// malformed value is an input error.
fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("HULLCHECK_THREADS") {
        Ok(raw) => {
            let threads: usize = raw
                .trim()
                .parse()
                .with_context(|| format!("HULLCHECK_THREADS={raw:?} is not a thread count"))?;
            if threads == 0 {
                bail!("HULLCHECK_THREADS must be at least 1");
            }
            Ok(Some(threads))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e).context("HULLCHECK_THREADS is not valid unicode"),
    }
}

/// Runs the whole matrix and returns rows sorted by (instance id, variant).
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.variants.is_empty() {
        bail!("no variants selected");
    }
    if config.count == 0 {
        bail!("--count must be at least 1");
    }
    if let Some(dir) = &config.trace_dir {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("could not create {}", dir.display()))?;
    }
    // Instances are drawn sequentially from one stream up front, so the data
    // does not depend on scheduling.
    let mut stream = Stream::new(config.seed);
    let instances: Vec<(PointSet, QueryPoint)> = (0..config.count)
        .map(|_| generate(config.family, &mut stream, config.m, config.n))
        .collect();
    let jobs: Vec<(usize, Variant)> = (0..config.count)
        .flat_map(|i| config.variants.iter().map(move |&v| (i, v)))
        .collect();

    let run_all = || -> Result<Vec<BenchRow>> {
        jobs.par_iter()
            .map(|&(i, variant)| {
                let (s, p) = &instances[i];
                bench_job(config, i, s, p, variant)
            })
            .collect()
    };
    let mut rows = match thread_cap()? {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .context("could not build the bench thread pool")?
            .install(run_all)?,
        None => jobs
            .iter()
            .map(|&(i, variant)| {
                let (s, p) = &instances[i];
                bench_job(config, i, s, p, variant)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    // Canonical row order is (instance id, variant name): consumers see the
    // CSV strings, so the tiebreak is lexicographic on the name column.
    rows.sort_by_key(|row| (row.instance, row.variant.name()));
    Ok(rows)
}

/// The harness CSV. The wall column is empty unless measurement was on.
pub fn format_bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(
        "instance,variant,verdict,iterations,pivot_scans,wall_ms,final_gap,observed_nu,observed_c\n",
    );
    for row in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},",
            row.instance,
            row.variant.name(),
            row.verdict,
            row.iterations,
            row.pivot_scans
        );
        if let Some(ms) = row.wall_ms {
            let _ = write!(out, "{ms:.3}");
        }
        let _ = writeln!(
            out,
            ",{},{},{}",
            row.final_gap, row.observed_nu, row.observed_c
        );
    }
    out
}

pub fn write_bench_csv(path: &Path, rows: &[BenchRow]) -> Result<()> {
    std::fs::write(path, format_bench_csv(rows))
        .with_context(|| format!("could not write {}", path.display()))
}
