//! LP feasibility (`Ax = b`, `x >= 0`) by reduction to hull membership.
//!
//! Feasibility is equivalent to the origin lying in the hull of the columns
//! of `A` together with `-b`: from `Ax = b` with `x >= 0`, dividing the
//! combination `Σ x_i a_i - b = 0` by `1 + Σ x_i` yields convex coefficients,
//! and conversely any convex combination hitting the origin with a positive
//! last coefficient rescales to a feasible `x`. The accuracy the inner solve
//! needs in order to keep that last coefficient healthy — and hence keep the
//! rescaled residual below `eps0 * R'` — comes from a lower bound on the
//! distance from the origin to the hull of the columns alone.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    distance, norm, GeometryError, Iterate, PivotRule, PointSet, QueryPoint, Tolerances,
};
use crate::solver::{solve_with_options, Certificate, RunStats, SolveOptions, StopReason};

/// Phase I gives up once its halving tolerance drops below this floor (2⁻⁴⁰)
/// without producing a witness; at that point the origin is in the hull of
/// the columns to numerical precision and the no-recession reduction is
/// invalid.
pub const PHASE1_EPS_FLOOR: f64 = 1.0 / 1099511627776.0;

/// Threshold below which the reduced solution's last coefficient counts as
/// collapsed. The sensitivity bound guarantees a far larger value whenever its
/// hypotheses hold, so hitting this signals misuse.
pub const ALPHA_MIN_THRESHOLD: f64 = 1e-14;

/// How the LP is posed: plain `Ax = b, x >= 0` under the no-recession
/// assumption, or with an explicit bound `M >= Σ x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum LpMode {
    NoRecession,
    BoundedM { m_bound: f64 },
}

/// A feasibility instance: the columns of `A` as a point set, the right-hand
/// side, the posing mode, and the target residual accuracy `eps0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LpInstance {
    columns: PointSet,
    b: Vec<f64>,
    mode: LpMode,
    eps0: f64,
}

impl LpInstance {
    pub fn new(
        columns: PointSet,
        b: Vec<f64>,
        mode: LpMode,
        eps0: f64,
    ) -> Result<Self, LpError> {
        if b.len() != columns.dim() {
            return Err(LpError::Geometry(GeometryError::DimensionMismatch {
                index: 0,
                expected: columns.dim(),
                got: b.len(),
            }));
        }
        if let Some(index) = b.iter().position(|x| !x.is_finite()) {
            return Err(LpError::Geometry(GeometryError::NonFinite { index }));
        }
        if !(eps0 > 0.0 && eps0 < 1.0) {
            return Err(LpError::Geometry(GeometryError::EpsOutOfRange(eps0)));
        }
        if let LpMode::BoundedM { m_bound } = mode {
            if !(m_bound > 0.0) || !m_bound.is_finite() {
                return Err(LpError::BoundNotPositive { got: m_bound });
            }
        }
        Ok(Self {
            columns,
            b,
            mode,
            eps0,
        })
    }

    pub fn columns(&self) -> &PointSet {
        &self.columns
    }

    pub fn rhs(&self) -> &[f64] {
        &self.b
    }

    pub fn mode(&self) -> LpMode {
        self.mode
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }
}

/// Which reduced membership instance a certificate refers to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "context", rename_all = "snake_case")]
pub enum LpContext {
    /// The `n+1`-point instance `conv({a_i} ∪ {-b})` with query at the origin.
    NoRecessionReduction,
    /// The augmented instance `conv({a_i} ∪ {0})` with query `b/mu`.
    Augmented { mu: f64 },
}

/// Outcome of an LP feasibility solve.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LpResult {
    /// `x0 >= 0` with `d(A x0, b) = residual < bound`.
    ApproxFeasible {
        x0: Vec<f64>,
        residual: f64,
        bound: f64,
    },
    /// A witness for the reduced instance named by `context`; under the
    /// context's assumptions the original system is infeasible.
    InfeasibleCertificate {
        inner: Certificate,
        context: LpContext,
    },
    Inconclusive { reason: String },
}

impl LpResult {
    pub fn kind_name(&self) -> &'static str {
        match self {
            LpResult::ApproxFeasible { .. } => "approx_feasible",
            LpResult::InfeasibleCertificate { .. } => "infeasible_certificate",
            LpResult::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Per-round diagnostics of the doubling scheme.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoublingRound {
    pub mu: f64,
    pub outcome: String,
    pub iterations: usize,
    pub final_gap: f64,
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("simplex bound must be at least 1 for the augmented reduction, got {got}")]
    BoundBelowOne { got: f64 },
    #[error("simplex bound must be positive and finite, got {got}")]
    BoundNotPositive { got: f64 },
    #[error("doubling cap must be at least 1, got {got}")]
    CapBelowOne { got: f64 },
    #[error("last coefficient collapsed ({alpha:.3e} <= {threshold:.3e}); cannot rescale to x0")]
    LastCoefficientCollapse { alpha: f64, threshold: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

/// Builds the no-recession membership instance: the columns of `A` plus `-b`
/// as the point set, the origin as the query. Returns the set, the query, and
/// the scale `R' = max{‖a_i‖, ‖b‖}`.
pub fn reduce_no_recession(a: &PointSet, b: &[f64]) -> (PointSet, QueryPoint, f64) {
    assert_eq!(a.dim(), b.len(), "dimension mismatch between columns and b");
    let mut points: Vec<Vec<f64>> = a.iter().map(|c| c.to_vec()).collect();
    points.push(b.iter().map(|x| -x).collect());
    let set = PointSet::new(a.dim(), &points).expect("reduction points are valid");
    let origin = QueryPoint::new(vec![0.0; a.dim()]).expect("origin is valid");
    let r_prime = a
        .iter()
        .map(|c| norm(c))
        .fold(norm(b), f64::max);
    (set, origin, r_prime)
}

/// Rescales a simplex vector over the `n+1` reduction points to a nonnegative
/// solution of the original system: `x0_i = α_i / α_{n+1}`.
pub fn extract_x0(coeffs: &[f64]) -> Result<Vec<f64>, LpError> {
    assert!(coeffs.len() >= 2, "need at least one column plus the -b point");
    let alpha_last = coeffs[coeffs.len() - 1];
    if alpha_last <= ALPHA_MIN_THRESHOLD {
        return Err(LpError::LastCoefficientCollapse {
            alpha: alpha_last,
            threshold: ALPHA_MIN_THRESHOLD,
        });
    }
    Ok(coeffs[..coeffs.len() - 1]
        .iter()
        .map(|&a| a / alpha_last)
        .collect())
}

/// The inner-solve tolerance that makes the rescaled residual land below
/// `eps0 * r_prime`: `ε = (Δ'_0/2) · min{1/R', ε_0/(Δ'_0 + b_0)}`, where
/// `delta0_lower` is a lower bound on the distance from the origin to the
/// hull of the columns alone and `b_norm = ‖b‖`.
pub fn sensitivity_epsilon(delta0_lower: f64, b_norm: f64, r_prime: f64, eps0: f64) -> f64 {
    assert!(delta0_lower > 0.0, "need a positive distance lower bound");
    assert!(r_prime > 0.0, "need a positive scale");
    (delta0_lower / 2.0) * (1.0 / r_prime).min(eps0 / (delta0_lower + b_norm))
}

// ---------------------------------------------------------------------------
// Two-phase solve
// ---------------------------------------------------------------------------

fn merge_totals(total_iters: &mut usize, total_scans: &mut u64, stats: &RunStats) {
    *total_iters += stats.iterations;
    *total_scans += stats.pivot_scans;
}

fn finish_stats(mut last: RunStats, total_iters: usize, total_scans: u64) -> RunStats {
    last.iterations = total_iters;
    last.pivot_scans = total_scans;
    last
}

/// Decides feasibility of `Ax = b, x >= 0` under the no-recession assumption.
///
/// Phase I certifies the origin outside the hull of the columns by running the
/// membership solver at halving tolerances (0.5, 0.25, …) until a witness
/// appears, warm-starting each level from the last; the witness gap `‖p'‖`
/// brackets the true distance within a factor of two, so `Δ'_0 = ‖p'‖/2` is a
/// safe lower bound. Phase II solves the `n+1`-point reduction at the
/// sensitivity tolerance, warm-started from the Phase-I witness, with an early
/// exit as soon as the rescaled residual provably beats `eps0 * R'`.
///
/// Returned stats: `iterations` and `pivot_scans` total across all phases;
/// the series fields are the final phase's.
pub fn two_phase_solve(a: &PointSet, b: &[f64], eps0: f64) -> (LpResult, RunStats) {
    assert_eq!(a.dim(), b.len(), "dimension mismatch between columns and b");
    assert!(eps0 > 0.0 && eps0 < 1.0, "eps0 must lie in (0,1)");

    let origin = QueryPoint::new(vec![0.0; a.dim()]).expect("origin is valid");
    let mut total_iters = 0usize;
    let mut total_scans = 0u64;

    // Phase I: certify 0 outside conv(columns) and harvest the witness.
    let mut eps_level = 0.5f64;
    let mut warm: Option<Iterate> = None;
    let phase1 = loop {
        let tol = Tolerances::new(eps_level)
            .expect("halving tolerance in range")
            .with_rule(PivotRule::BestAngle);
        let run = solve_with_options(
            a,
            &origin,
            &tol,
            SolveOptions {
                warm_start: warm.take(),
                ..SolveOptions::default()
            },
        );
        merge_totals(&mut total_iters, &mut total_scans, &run.stats);
        match run.stop {
            StopReason::Witness => break run,
            StopReason::Approx => {
                eps_level /= 2.0;
                if eps_level < PHASE1_EPS_FLOOR {
                    return (
                        LpResult::Inconclusive {
                            reason: "recession direction suspected: the origin lies in the hull \
                                     of the columns to numerical precision, so the no-recession \
                                     reduction does not apply"
                                .to_string(),
                        },
                        finish_stats(run.stats, total_iters, total_scans),
                    );
                }
                warm = Some(run.final_iterate);
            }
            _ => {
                return (
                    LpResult::Inconclusive {
                        reason: match run.certificate {
                            Certificate::Inconclusive { reason } => {
                                format!("phase I: {reason}")
                            }
                            _ => "phase I stopped without a verdict".to_string(),
                        },
                    },
                    finish_stats(run.stats, total_iters, total_scans),
                );
            }
        }
    };

    let witness_gap = phase1.final_iterate.gap();
    let delta0_lower = witness_gap / 2.0;
    let b_norm = norm(b);
    let (set2, _, r_prime) = reduce_no_recession(a, b);
    let eps1 = sensitivity_epsilon(delta0_lower, b_norm, r_prime, eps0);

    // Phase II: warm-start from the Phase-I witness with a zero coefficient
    // appended for the -b point.
    let mut coeffs2 = phase1.final_iterate.coeffs().to_vec();
    coeffs2.push(0.0);
    let warm2 = Iterate::from_coeffs(&set2, &origin, coeffs2)
        .expect("phase-I coefficients extend to the reduction");
    let n_plus_1 = set2.len();
    let residual_target = eps0 * r_prime;
    let mut early = move |it: &Iterate, _k: usize| {
        let alpha_last = it.coeffs()[n_plus_1 - 1];
        alpha_last > ALPHA_MIN_THRESHOLD && it.gap() / alpha_last < residual_target
    };
    let tol2 = Tolerances::new(eps1)
        .expect("sensitivity tolerance in range")
        .with_rule(PivotRule::BestAngle);
    let run2 = solve_with_options(
        &set2,
        &origin,
        &tol2,
        SolveOptions {
            warm_start: Some(warm2),
            early_stop: Some(&mut early),
            ..SolveOptions::default()
        },
    );
    merge_totals(&mut total_iters, &mut total_scans, &run2.stats);
    let stats = finish_stats(run2.stats.clone(), total_iters, total_scans);

    let result = match run2.stop {
        StopReason::Approx | StopReason::EarlyStop => {
            match extract_x0(run2.final_iterate.coeffs()) {
                Ok(x0) => {
                    let residual = residual_of(a, &x0, b);
                    let bound = eps0 * r_prime;
                    if residual < bound {
                        LpResult::ApproxFeasible {
                            x0,
                            residual,
                            bound,
                        }
                    } else {
                        LpResult::Inconclusive {
                            reason: format!(
                                "residual {residual:.3e} failed its bound {bound:.3e} after \
                                 rescaling; sensitivity hypotheses violated numerically"
                            ),
                        }
                    }
                }
                Err(e) => LpResult::Inconclusive {
                    reason: e.to_string(),
                },
            }
        }
        StopReason::Witness => LpResult::InfeasibleCertificate {
            inner: run2.certificate,
            context: LpContext::NoRecessionReduction,
        },
        _ => LpResult::Inconclusive {
            reason: match run2.certificate {
                Certificate::Inconclusive { reason } => format!("phase II: {reason}"),
                _ => "phase II stopped without a verdict".to_string(),
            },
        },
    };
    (result, stats)
}

/// `d(A x0, b)` computed directly from the candidate solution.
pub fn residual_of(a: &PointSet, x0: &[f64], b: &[f64]) -> f64 {
    assert_eq!(x0.len(), a.len(), "one multiplier per column");
    let mut ax = vec![0.0; a.dim()];
    for (x, col) in x0.iter().zip(a.iter()) {
        for (acc, c) in ax.iter_mut().zip(col) {
            *acc += x * c;
        }
    }
    distance(&ax, b)
}

// ---------------------------------------------------------------------------
// Bounded and doubling solves
// ---------------------------------------------------------------------------

fn augmented_set(a: &PointSet) -> PointSet {
    let mut points: Vec<Vec<f64>> = a.iter().map(|c| c.to_vec()).collect();
    points.push(vec![0.0; a.dim()]);
    PointSet::new(a.dim(), &points).expect("augmented points are valid")
}

struct AugmentedRound {
    run_result: Certificate,
    stop: StopReason,
    final_iterate: Iterate,
    stats: RunStats,
}

fn solve_augmented_round(
    set: &PointSet,
    b: &[f64],
    mu: f64,
    eps: f64,
    warm: Option<Iterate>,
) -> AugmentedRound {
    let query = QueryPoint::new(b.iter().map(|x| x / mu).collect())
        .expect("scaled right-hand side is finite");
    let eps_int = eps / mu;
    let tol = Tolerances::new(eps_int)
        .expect("augmented tolerance in range")
        .with_rule(PivotRule::BestAngle);
    // Re-anchor the warm start to the new query (the cached gap refers to the
    // previous round's query point).
    let warm = warm.map(|it| {
        Iterate::from_coeffs(set, &query, it.coeffs().to_vec())
            .expect("warm coefficients stay a simplex vector")
    });
    let run = solve_with_options(
        set,
        &query,
        &tol,
        SolveOptions {
            warm_start: warm,
            ..SolveOptions::default()
        },
    );
    AugmentedRound {
        run_result: run.certificate,
        stop: run.stop,
        final_iterate: run.final_iterate,
        stats: run.stats,
    }
}

fn feasible_from_round(
    a: &PointSet,
    b: &[f64],
    mu: f64,
    eps: f64,
    r_prime: f64,
    round: &AugmentedRound,
) -> LpResult {
    let y = round.final_iterate.coeffs();
    let x0: Vec<f64> = y[..a.len()].iter().map(|&v| mu * v).collect();
    let residual = residual_of(a, &x0, b);
    let bound = 2.0 * r_prime * eps;
    if residual < bound {
        LpResult::ApproxFeasible {
            x0,
            residual,
            bound,
        }
    } else {
        LpResult::Inconclusive {
            reason: format!(
                "residual {residual:.3e} failed its bound {bound:.3e} at mu = {mu}; \
                 augmented-round hypotheses violated numerically"
            ),
        }
    }
}

/// Decides feasibility of `Ax = b, x >= 0, Σ x_i <= M` by solving membership
/// of `b/M` in the hull of the columns plus the origin at accuracy `eps/M`.
/// A feasible answer rescales to `x0 = M·y` with residual below `2 R' eps`;
/// a witness certifies the bounded system infeasible (hence the unbounded one
/// too, whenever `M` really bounds some solution).
///
/// Requires `M >= 1`: the scale bound `d(a_i, b/μ) <= max{d(a_i,b), ‖a_i‖}`
/// behind the residual guarantee holds for `μ >= 1` only.
pub fn bounded_m_solve(
    a: &PointSet,
    b: &[f64],
    m_bound: f64,
    eps: f64,
) -> Result<(LpResult, RunStats), LpError> {
    assert_eq!(a.dim(), b.len(), "dimension mismatch between columns and b");
    if !(m_bound >= 1.0) || !m_bound.is_finite() {
        return Err(LpError::BoundBelowOne { got: m_bound });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(LpError::Geometry(GeometryError::EpsOutOfRange(eps)));
    }
    let set = augmented_set(a);
    let (_, _, r_prime) = reduce_no_recession(a, b);
    let round = solve_augmented_round(&set, b, m_bound, eps, None);
    let result = match round.stop {
        StopReason::Approx => feasible_from_round(a, b, m_bound, eps, r_prime, &round),
        StopReason::Witness => LpResult::InfeasibleCertificate {
            inner: round.run_result,
            context: LpContext::Augmented { mu: m_bound },
        },
        _ => LpResult::Inconclusive {
            reason: match round.run_result {
                Certificate::Inconclusive { reason } => reason,
                _ => "augmented solve stopped without a verdict".to_string(),
            },
        },
    };
    Ok((result, round.stats))
}

/// Runs the doubling scheme `μ = 1, 2, 4, …` up to `mu_cap` (with a final
/// clamped round at exactly `mu_cap` when the doubling overshoots it), each
/// round warm-started from the last. Returns the first feasible answer, or an
/// infeasibility certificate at the cap meaning "infeasible for every tested
/// bound". Stats: totals across rounds, series from the final round.
pub fn doubling_solve(
    a: &PointSet,
    b: &[f64],
    eps: f64,
    mu_cap: f64,
) -> Result<(LpResult, RunStats), LpError> {
    let (result, _, stats) = doubling_rounds(a, b, eps, mu_cap)?;
    Ok((result, stats))
}

/// [`doubling_solve`] with per-round diagnostics.
pub fn doubling_rounds(
    a: &PointSet,
    b: &[f64],
    eps: f64,
    mu_cap: f64,
) -> Result<(LpResult, Vec<DoublingRound>, RunStats), LpError> {
    assert_eq!(a.dim(), b.len(), "dimension mismatch between columns and b");
    if !(mu_cap >= 1.0) || !mu_cap.is_finite() {
        return Err(LpError::CapBelowOne { got: mu_cap });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(LpError::Geometry(GeometryError::EpsOutOfRange(eps)));
    }

    let set = augmented_set(a);
    let (_, _, r_prime) = reduce_no_recession(a, b);
    let mut rounds = Vec::new();
    let mut warm: Option<Iterate> = None;
    let mut total_iters = 0usize;
    let mut total_scans = 0u64;
    let mut mu = 1.0f64;

    loop {
        let round = solve_augmented_round(&set, b, mu, eps, warm.take());
        merge_totals(&mut total_iters, &mut total_scans, &round.stats);
        rounds.push(DoublingRound {
            mu,
            outcome: round.run_result.kind_name().to_string(),
            iterations: round.stats.iterations,
            final_gap: round.final_iterate.gap(),
        });
        match round.stop {
            StopReason::Approx => {
                let result = feasible_from_round(a, b, mu, eps, r_prime, &round);
                let stats = finish_stats(round.stats, total_iters, total_scans);
                return Ok((result, rounds, stats));
            }
            StopReason::Witness => {
                if mu >= mu_cap {
                    let stats = finish_stats(round.stats, total_iters, total_scans);
                    return Ok((
                        LpResult::InfeasibleCertificate {
                            inner: round.run_result,
                            context: LpContext::Augmented { mu },
                        },
                        rounds,
                        stats,
                    ));
                }
                warm = Some(round.final_iterate);
                mu = (mu * 2.0).min(mu_cap);
            }
            _ => {
                let reason = match round.run_result {
                    Certificate::Inconclusive { reason } => {
                        format!("round mu = {mu}: {reason}")
                    }
                    _ => format!("round mu = {mu} stopped without a verdict"),
                };
                let stats = finish_stats(round.stats, total_iters, total_scans);
                return Ok((LpResult::Inconclusive { reason }, rounds, stats));
            }
        }
    }
}
