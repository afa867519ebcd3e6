//! `hullcheck`: decide whether a point lies in the convex hull of finitely
//! many points — or pose LP feasibility and ball-intersection questions the
//! same way — and emit certificates any consumer can re-verify.
//!
//! Exit codes: 0 approximate solution / feasible, 1 witness / infeasible,
//! 2 inconclusive, 3 input error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use hullcheck_cli::config::{Mode, RunConfig, Variant};
use hullcheck_cli::report::{EXIT_INPUT_ERROR, SCHEMA};
use hullcheck_cli::{bench, ingest, runner, trace, visibility};
use hullcheck_core::PivotRule;

#[derive(Parser)]
#[command(
    name = "hullcheck",
    version,
    about = "Convex-hull membership, LP feasibility, and ball-intersection solver \
             with verifiable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and emit a JSON report.
    Run(RunArgs),
    /// Run a variant matrix over a seeded instance family; emit a CSV table.
    Bench(BenchArgs),
    /// Sample the visibility constants of one instance.
    Probe(ProbeArgs),
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    Variant::from_str(s)
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::from_str(s)
}

fn parse_rule(s: &str) -> Result<PivotRule, String> {
    PivotRule::from_str(s)
}

fn parse_family(s: &str) -> Result<bench::Family, String> {
    bench::Family::from_str(s)
}

#[derive(Args)]
struct RunArgs {
    /// Points CSV (`# dim=m` header, one point per row).
    #[arg(long)]
    points: Option<PathBuf>,
    /// Query CSV (one row).
    #[arg(long)]
    query: Option<PathBuf>,
    /// Rows of the LP coefficient matrix `A`.
    #[arg(long = "lp-a")]
    lp_a: Option<PathBuf>,
    /// Right-hand side `b` (one row).
    #[arg(long = "lp-b")]
    lp_b: Option<PathBuf>,
    /// membership | lp_norecession | lp_boundedM | lp_doubling | balls.
    #[arg(long, default_value = "membership", value_parser = parse_mode)]
    mode: Mode,
    /// triangle | virtual | avta | delta-k | greedy.
    #[arg(long, default_value = "triangle", value_parser = parse_variant)]
    variant: Variant,
    /// first-index | best-angle | strict-first | strict-best | strategy-i | strategy-iv.
    #[arg(long = "pivot-rule", default_value = "first-index", value_parser = parse_rule)]
    pivot_rule: PivotRule,
    /// Relative accuracy target in (0,1).
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    /// Residual accuracy target for the no-recession LP mode.
    #[arg(long, default_value_t = 1e-2)]
    eps0: f64,
    /// Carried hull points for the growing-face variant.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Inner budget for the virtual-target variants.
    #[arg(long, default_value_t = 5)]
    t: usize,
    #[arg(long = "max-iters", default_value_t = 10_000_000)]
    max_iters: usize,
    /// Simplex bound for mode lp_boundedM.
    #[arg(long = "big-m")]
    big_m: Option<f64>,
    /// Doubling cap for mode lp_doubling.
    #[arg(long = "mu-cap")]
    mu_cap: Option<f64>,
    /// Seed recorded in the report (instance generation elsewhere keys on it).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Gap-trace CSV file.
    #[arg(long = "trace-out")]
    trace_out: Option<PathBuf>,
    /// Run the ε-halving driver (start at 0.5, floor 2⁻³⁰) instead of a
    /// single solve.
    #[arg(long)]
    halving: bool,
    /// Measure wall-clock time (reports stop being byte-reproducible).
    #[arg(long = "wall-time")]
    wall_time: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// feasible | infeasible | square | square-ball.
    #[arg(long, default_value = "feasible", value_parser = parse_family)]
    family: bench::Family,
    /// Comma-separated variant list.
    #[arg(long, default_value = "triangle", value_delimiter = ',', value_parser = parse_variant)]
    variants: Vec<Variant>,
    #[arg(long = "pivot-rule", default_value = "first-index", value_parser = parse_rule)]
    pivot_rule: PivotRule,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    /// Dimension for the gaussian families.
    #[arg(long, default_value_t = 10)]
    m: usize,
    /// Point count for the gaussian families.
    #[arg(long, default_value_t = 50)]
    n: usize,
    /// Instances per family.
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long = "max-iters", default_value_t = 10_000_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 5)]
    t: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for per-run gap traces.
    #[arg(long = "trace-dir")]
    trace_dir: Option<PathBuf>,
    /// Fill the wall-clock column (CSV stops being byte-reproducible).
    #[arg(long = "wall-time")]
    wall_time: bool,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    query: PathBuf,
    /// Exclusion-ball accuracy: samples inside `B(p, eps·R)` are rejected.
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| anyhow::anyhow!("could not write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_command(args: RunArgs) -> anyhow::Result<i32> {
    let config = RunConfig {
        variant: args.variant,
        pivot_rule: args.pivot_rule,
        eps: args.eps,
        eps0: args.eps0,
        k: args.k,
        t: args.t,
        max_iters: args.max_iters,
        seed: args.seed,
        mode: args.mode,
    };
    let mut inputs = runner::RunInputs {
        big_m: args.big_m,
        mu_cap: args.mu_cap,
        halving: args.halving,
        wall_time: args.wall_time,
        ..runner::RunInputs::default()
    };
    if config.mode.is_lp() {
        match (&args.lp_a, &args.lp_b) {
            (Some(a), Some(b)) => inputs.lp = Some(ingest::read_lp(a, b)?),
            _ => anyhow::bail!("--lp-a and --lp-b are required for the LP modes"),
        }
    } else {
        if let Some(path) = &args.points {
            inputs.points = Some(ingest::read_points(path)?);
        }
        if let Some(path) = &args.query {
            let dim = inputs.points.as_ref().map(|s| s.dim());
            inputs.query = Some(ingest::read_query(path, dim)?);
        }
    }
    let output = runner::execute(&config, &inputs)?;
    if let Some(path) = &args.trace_out {
        trace::write_trace(path, &output.stats, output.pivot_ids.as_deref())?;
    }
    emit(args.out.as_ref(), &output.report.to_json())?;
    Ok(output.exit_code)
}

fn bench_command(args: BenchArgs) -> anyhow::Result<i32> {
    let config = bench::BenchConfig {
        variants: args.variants,
        pivot_rule: args.pivot_rule,
        eps: args.eps,
        family: args.family,
        m: args.m,
        n: args.n,
        count: args.count,
        max_iters: args.max_iters,
        k: args.k,
        t: args.t,
        seed: args.seed,
        wall_time: args.wall_time,
        trace_dir: args.trace_dir,
    };
    let rows = bench::run_bench(&config)?;
    emit(args.out.as_ref(), &bench::format_bench_csv(&rows))?;
    Ok(0)
}

fn probe_command(args: ProbeArgs) -> anyhow::Result<i32> {
    let points = ingest::read_points(&args.points)?;
    let query = ingest::read_query(&args.query, Some(points.dim()))?;
    let report = visibility::visibility_probe(&points, &query, args.eps, args.samples, args.seed)?;
    let mut text = serde_json::to_string_pretty(&serde_json::json!({
        "schema": SCHEMA,
        "visibility_report": report,
    }))
    .expect("probe report serializes");
    text.push('\n');
    emit(args.out.as_ref(), &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Bench(args) => bench_command(args),
        Command::Probe(args) => probe_command(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
