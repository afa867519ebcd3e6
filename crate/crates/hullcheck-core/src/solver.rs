//! The pivot-iteration membership solver, its certificates, and run statistics.
//!
//! The driver loop maintains a hull iterate `p'` and a current vertex `v`.
//! Each iteration first checks the relative stop test `d(p,p') < eps * d(p,v)`,
//! then searches for a pivot — a vertex at least as far from the iterate as
//! from the query point (`d(p',v_j) >= d(p,v_j)`). Finding none proves the
//! iterate is a witness: every set point is strictly closer to `p'` than to
//! `p`, so the bisector hyperplane of `[p, p']` separates `p` from the hull.
//! Otherwise the iterate moves to the nearest point of the segment `[p', v_j]`
//! to `p`, which strictly reduces the gap.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    cmp_tol, distance, dot, pivot_predicate, project_to_segment, strict_pivot_predicate,
    GeometryError, Iterate, PivotRule, PointSet, QueryPoint, Tolerances,
};
use crate::variants::{auxiliary_rule_wrap, StrategyDecision, StrategyHistory, TriggerGeometry};

/// Floor applied to the observed per-step contraction sines so the reported
/// visibility constant stays in `(0, 1]` even when a step lands exactly on the
/// query point.
pub const SINE_FLOOR: f64 = 1e-16;

/// Upper bound on auxiliary points inserted by the strategy pivot rules.
pub const AUX_CAP: usize = 64;

/// The verdict of a solve, self-contained enough to re-verify externally.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The query point is inside the hull up to the requested accuracy:
    /// `coeffs` expresses a hull point within `gap` of the query, with
    /// `gap < eps_used * radius` (or below the absolute exact-hit tolerance).
    ApproxSolution {
        coeffs: Vec<f64>,
        gap: f64,
        radius: f64,
        eps_used: f64,
    },
    /// The query point is outside the hull: `coeffs` expresses a hull point
    /// strictly closer to every set point than the query is, and the recorded
    /// hyperplane `{x : normal . x = offset}` strictly separates the query from
    /// the hull. The true distance to the hull lies in
    /// `[distance_lo, distance_hi] = [gap/2, gap]`.
    Witness {
        coeffs: Vec<f64>,
        gap: f64,
        hyperplane_normal: Vec<f64>,
        hyperplane_offset: f64,
        distance_lo: f64,
        distance_hi: f64,
    },
    /// No verdict: the iteration budget ran out or progress fell below
    /// floating-point resolution.
    Inconclusive { reason: String },
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::ApproxSolution { .. } => "approx_solution",
            Certificate::Witness { .. } => "witness",
            Certificate::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Diagnostics accumulated over one solve.
///
/// `gap_series[0]` is the starting gap and each later entry is the gap after a
/// completed step, so the series is strictly decreasing. `pivot_angle_series`
/// records per-step effective contraction angles `asin(min(1, gap'/gap))`,
/// which equal the geometric pivot angle whenever the step lands strictly
/// inside its segment. `observed_nu` is the largest recorded sine over steps
/// taken while `gap >= eps * radius` (1.0 if no such step), floored at 1e-16;
/// `observed_c` satisfies `nu = 1/sqrt(1+c)`. For extremely long runs the two
/// series may be truncated to the recorder's capacity; `iterations` and
/// `pivot_scans` always count everything.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RunStats {
    pub iterations: usize,
    pub gap_series: Vec<f64>,
    pub pivot_angle_series: Vec<f64>,
    pub observed_nu: f64,
    pub observed_c: f64,
    pub pivot_scans: u64,
}

/// Why the engine stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    /// Relative stop test passed (or exact hit).
    Approx,
    /// No pivot exists: the iterate is a witness.
    Witness,
    /// The caller-provided early-stop callback fired.
    EarlyStop,
    /// Iteration budget exhausted.
    MaxIters,
    /// A step failed to strictly reduce the gap (floating-point resolution).
    Stalled,
}

/// Full outcome of a solve, including the final iterate and per-step pivot ids
/// (ids below `n` are set vertices; ids `>= n` index auxiliary points inserted
/// by strategy rules).
#[derive(Clone, Debug)]
pub struct SolveRun {
    pub certificate: Certificate,
    pub stats: RunStats,
    pub final_iterate: Iterate,
    pub radius: f64,
    pub stop: StopReason,
    pub pivot_trace: Vec<usize>,
}

/// Extra controls for [`solve_with_options`].
pub struct SolveOptions<'a> {
    /// Start from this iterate instead of the nearest vertex.
    pub warm_start: Option<Iterate>,
    /// Called once per iteration (after the stop tests, before the pivot
    /// search) with the current iterate and iteration count; returning `true`
    /// stops the run with [`StopReason::EarlyStop`].
    pub early_stop: Option<&'a mut dyn FnMut(&Iterate, usize) -> bool>,
    /// Capacity for the recorded gap/angle/pivot series.
    pub series_limit: usize,
}

impl Default for SolveOptions<'_> {
    fn default() -> Self {
        Self {
            warm_start: None,
            early_stop: None,
            series_limit: usize::MAX,
        }
    }
}

/// Errors from certificate construction helpers.
#[derive(Debug, Error)]
pub enum SolverError {
    #[error("witness point coincides with the query point")]
    DegenerateWitness,
    #[error("not a witness: set point {index} is not strictly closer to the candidate than to the query")]
    NotAWitness { index: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A family of open balls `B(v_i, r_i)` whose boundaries all pass through a
/// common point. Deciding whether the balls' intersection meets the hull of
/// the centers is equivalent to deciding membership of the common point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallSystem {
    centers: PointSet,
    radii: Vec<f64>,
    common_point: QueryPoint,
}

impl BallSystem {
    /// Validates that every radius is positive and equals the distance from
    /// the common point to its center within `1e-9 * (1 + r_i)`.
    pub fn new(
        centers: PointSet,
        radii: Vec<f64>,
        common_point: QueryPoint,
    ) -> Result<Self, GeometryError> {
        if radii.len() != centers.len() {
            return Err(GeometryError::CoefficientLength {
                expected: centers.len(),
                got: radii.len(),
            });
        }
        for (i, (&r, c)) in radii.iter().zip(centers.iter()).enumerate() {
            let expected = distance(c, common_point.coords());
            if !(r > 0.0) || (r - expected).abs() > 1e-9 * (1.0 + r.abs()) {
                return Err(GeometryError::RadiusMismatch {
                    index: i,
                    expected,
                    got: r,
                });
            }
        }
        Ok(Self {
            centers,
            radii,
            common_point,
        })
    }

    pub fn centers(&self) -> &PointSet {
        &self.centers
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn common_point(&self) -> &QueryPoint {
        &self.common_point
    }
}

/// Outcome of the intersecting-balls decision.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BallsOutcome {
    /// The common point lies in the hull of the centers (up to `eps`), so the
    /// open balls' intersection with that hull is empty.
    EmptyIntersection {
        certificate: Certificate,
        stats: RunStats,
    },
    /// A point in the hull of the centers lying strictly inside every ball.
    IntersectionPoint {
        point: Vec<f64>,
        coeffs: Vec<f64>,
        stats: RunStats,
    },
    Inconclusive { reason: String, stats: RunStats },
}

// ---------------------------------------------------------------------------
// Pivot search
// ---------------------------------------------------------------------------

/// An auxiliary hull point (inserted by strategy rules) carried with its
/// coefficient expansion over the original set.
#[derive(Clone, Debug)]
pub(crate) struct AuxPoint {
    pub point: Vec<f64>,
    pub coeffs: Vec<f64>,
}

/// Resolves a pivot id to its coordinates (`< n`: set vertex, `>= n`: aux).
#[inline]
fn pivot_point<'a>(s: &'a PointSet, aux: &'a [AuxPoint], id: usize) -> &'a [f64] {
    if id < s.len() {
        s.point(id)
    } else {
        &aux[id - s.len()].point
    }
}

/// Cosine comparison key for the best-angle rules: the angle at the iterate
/// between the rays toward `p` and toward the candidate. Larger cosine means
/// smaller angle means stronger contraction.
#[inline]
fn angle_cosine(p: &[f64], iterate_point: &[f64], v: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut d2v = 0.0;
    let mut d2p = 0.0;
    for i in 0..p.len() {
        let a = p[i] - iterate_point[i];
        let b = v[i] - iterate_point[i];
        num += a * b;
        d2v += b * b;
        d2p += a * a;
    }
    if d2v == 0.0 || d2p == 0.0 {
        return -2.0; // degenerate candidate, ranks below every real one
    }
    num / (d2v.sqrt() * d2p.sqrt())
}

/// Scans `S` (and any auxiliary points) for a pivot according to `rule`,
/// starting with a retest of `v_cur` for the first-index family. Returns the
/// chosen pivot id, counting predicate evaluations into `scans`.
///
/// Soundness note: auxiliary points belong to the hull, so if no set vertex is
/// a pivot none of them can be either — a `None` here always certifies a
/// witness regardless of auxiliary state.
///
/// Shared with the sibling variant solvers so that trajectories that are
/// supposed to coincide with [`solve`]'s go through identical arithmetic.
pub(crate) fn select_pivot(
    s: &PointSet,
    p: &[f64],
    iterate: &Iterate,
    v_cur: usize,
    aux: &[AuxPoint],
    rule: PivotRule,
    scans: &mut u64,
) -> Option<usize> {
    let n = s.len();
    let total = n + aux.len();
    let pp = iterate.point();

    let plain = |id: usize, scans: &mut u64| -> bool {
        *scans += 1;
        pivot_predicate(pp, p, pivot_point(s, aux, id))
    };
    let strict = |id: usize| -> bool { strict_pivot_predicate(pp, p, pivot_point(s, aux, id)) };

    match rule {
        PivotRule::FirstIndex | PivotRule::StrategyI | PivotRule::StrategyIV => {
            if v_cur < total && plain(v_cur, scans) {
                return Some(v_cur);
            }
            (0..total).find(|&id| id != v_cur && plain(id, scans))
        }
        PivotRule::StrictFirst => {
            if v_cur < total && plain(v_cur, scans) && strict(v_cur) {
                return Some(v_cur);
            }
            let mut first_plain = None;
            for id in 0..total {
                if plain(id, scans) {
                    if strict(id) {
                        return Some(id);
                    }
                    if first_plain.is_none() {
                        first_plain = Some(id);
                    }
                }
            }
            first_plain
        }
        PivotRule::BestAngle | PivotRule::StrictBest => {
            let want_strict = rule == PivotRule::StrictBest;
            let mut best_strict: Option<(usize, f64)> = None;
            let mut best_plain: Option<(usize, f64)> = None;
            for id in 0..total {
                if !plain(id, scans) {
                    continue;
                }
                let cos = angle_cosine(p, pp, pivot_point(s, aux, id));
                let slot = if want_strict && strict(id) {
                    &mut best_strict
                } else {
                    &mut best_plain
                };
                if slot.map_or(true, |(_, c)| cos > c) {
                    *slot = Some((id, cos));
                }
            }
            best_strict.or(best_plain).map(|(id, _)| id)
        }
    }
}

/// Finds a pivot for `iterate` among the set vertices according to `rule`,
/// with no retest state and no auxiliary points (the strategy rules select
/// like `FirstIndex` here). Returns `None` iff the iterate is a witness.
pub fn find_pivot(
    iterate: &Iterate,
    p: &QueryPoint,
    s: &PointSet,
    rule: PivotRule,
) -> Option<usize> {
    let mut scans = 0u64;
    select_pivot(s, p.coords(), iterate, usize::MAX, &[], rule, &mut scans)
}

/// Executes one pivot step: moves the iterate to the nearest point of the
/// segment `[p', v_j]` to the query point. Requires `v_j` to be a pivot for
/// the iterate (debug-asserted); the move never increases the gap. A
/// degenerate segment (`v_j` equal to the iterate) leaves the iterate
/// unchanged, signalling the pivot should be skipped.
pub fn triangle_step(
    iterate: &Iterate,
    pivot_index: usize,
    p: &QueryPoint,
    s: &PointSet,
) -> Iterate {
    debug_assert!(
        pivot_predicate(iterate.point(), p.coords(), s.point(pivot_index)),
        "vertex {pivot_index} is not a pivot for the iterate"
    );
    let (_, alpha) = project_to_segment(p.coords(), iterate.point(), s.point(pivot_index));
    let mut next = iterate.clone();
    next.step_toward_vertex(s, p, pivot_index, alpha);
    next
}

/// Constructs the separating hyperplane certified by a witness point: the
/// orthogonal bisector of the segment from the witness `p'` to the query `p`,
/// written as `{x : c . x = gamma}` with `c = p - p'` and
/// `gamma = (||p||^2 - ||p'||^2) / 2`. Verifies `c . p > gamma` and
/// `c . v_i < gamma` for every set point and refuses to construct otherwise.
pub fn separating_hyperplane(
    witness_point: &[f64],
    p: &QueryPoint,
    s: &PointSet,
) -> Result<(Vec<f64>, f64), SolverError> {
    let pc = p.coords();
    assert_eq!(witness_point.len(), pc.len(), "dimension mismatch");
    let c: Vec<f64> = pc.iter().zip(witness_point).map(|(a, b)| a - b).collect();
    let gamma = (dot(pc, pc) - dot(witness_point, witness_point)) / 2.0;
    if dot(&c, pc) <= gamma {
        return Err(SolverError::DegenerateWitness);
    }
    for (index, v) in s.iter().enumerate() {
        if dot(&c, v) >= gamma {
            return Err(SolverError::NotAWitness { index });
        }
    }
    Ok((c, gamma))
}

/// The factor-2 bracket on the true hull distance certified by a witness with
/// the given gap: the distance lies in `[gap/2, gap]`.
pub fn distance_bracket(witness_gap: f64) -> (f64, f64) {
    assert!(witness_gap > 0.0, "witness gap must be positive");
    (witness_gap / 2.0, witness_gap)
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

struct SeriesRecorder {
    limit: usize,
    gaps: Vec<f64>,
    angles: Vec<f64>,
    pivots: Vec<usize>,
}

impl SeriesRecorder {
    fn new(limit: usize, first_gap: f64) -> Self {
        let mut gaps = Vec::new();
        if limit > 0 {
            gaps.push(first_gap);
        }
        Self {
            limit,
            gaps,
            angles: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn record(&mut self, gap: f64, angle: f64, pivot: usize) {
        if self.angles.len() < self.limit {
            self.gaps.push(gap);
            self.angles.push(angle);
            self.pivots.push(pivot);
        }
    }
}

fn build_witness_certificate(
    s: &PointSet,
    p: &QueryPoint,
    iterate: &Iterate,
) -> Result<Certificate, SolverError> {
    let (normal, offset) = separating_hyperplane(iterate.point(), p, s)?;
    let gap = iterate.gap();
    let (lo, hi) = distance_bracket(gap);
    Ok(Certificate::Witness {
        coeffs: iterate.coeffs().to_vec(),
        gap,
        hyperplane_normal: normal,
        hyperplane_offset: offset,
        distance_lo: lo,
        distance_hi: hi,
    })
}

/// Decides membership of `p` in the hull of `s`.
///
/// Returns an `ApproxSolution` once the gap drops below `eps * d(p, v)` for
/// the current vertex `v` (or below the absolute exact-hit tolerance
/// `1e-12 * (1 + ||p||)`); a `Witness` when some iterate has no pivot; and
/// `Inconclusive` when the iteration budget runs out or progress stalls at
/// floating-point resolution.
///
/// Panics if dimensions disagree or the tolerances are invalid for this set
/// (callers that ingest external data validate first).
pub fn solve(s: &PointSet, p: &QueryPoint, tol: &Tolerances) -> (Certificate, RunStats) {
    let run = solve_with_options(s, p, tol, SolveOptions::default());
    (run.certificate, run.stats)
}

/// [`solve`] with warm starts, an early-stop callback, and series capacity
/// control. This is the entry point the LP reductions and the growing-face
/// variant build on.
pub fn solve_with_options(
    s: &PointSet,
    p: &QueryPoint,
    tol: &Tolerances,
    options: SolveOptions<'_>,
) -> SolveRun {
    assert_eq!(s.dim(), p.dim(), "dimension mismatch between set and query");
    tol.validate(s.len())
        .expect("invalid tolerances for this point set");

    let SolveOptions {
        warm_start,
        mut early_stop,
        series_limit,
    } = options;

    let pc = p.coords();
    let n = s.len();
    let radius = s.max_distance_from(pc);
    let zero_tol = cmp_tol(p.norm());
    let eps_r = tol.eps * radius;

    let (nearest, _) = s.nearest_to(pc);
    let mut iterate = warm_start.unwrap_or_else(|| Iterate::at_vertex(s, p, nearest));
    let mut v_cur = nearest;

    let mut aux: Vec<AuxPoint> = Vec::new();
    let mut history = StrategyHistory::new();
    let mut recorder = SeriesRecorder::new(series_limit, iterate.gap());
    let mut scans = 0u64;
    let mut iterations = 0usize;
    let mut max_sine = 0.0f64;
    let mut any_rated_step = false;

    let stop = loop {
        let gap = iterate.gap();
        if gap <= zero_tol {
            break StopReason::Approx;
        }
        let dv = distance(pc, pivot_point(s, &aux, v_cur));
        if gap < tol.eps * dv {
            break StopReason::Approx;
        }
        if let Some(cb) = early_stop.as_deref_mut() {
            if cb(&iterate, iterations) {
                break StopReason::EarlyStop;
            }
        }
        if iterations >= tol.max_iters {
            break StopReason::MaxIters;
        }

        let Some(pid) = select_pivot(s, pc, &iterate, v_cur, &aux, tol.pivot_rule, &mut scans)
        else {
            break StopReason::Witness;
        };

        // Plain candidate: nearest point of [p', v_pid] to p.
        let vp = pivot_point(s, &aux, pid);
        let (plain_point, alpha) = project_to_segment(pc, iterate.point(), vp);
        let plain_gap = distance(&plain_point, pc);
        let mut executed = pid;

        let decision = match tol.pivot_rule {
            PivotRule::StrategyI | PivotRule::StrategyIV => {
                let geometry = TriggerGeometry {
                    gap,
                    relative_reduction: if gap > 0.0 { (gap - plain_gap) / gap } else { 1.0 },
                    pivot_is_strict: strict_pivot_predicate(iterate.point(), pc, vp),
                    gap_within_pivot_distance: gap <= distance(pc, vp),
                    aux_len: aux.len(),
                };
                auxiliary_rule_wrap(tol.pivot_rule, &history, &geometry)
            }
            _ => StrategyDecision::PlainStep,
        };

        match decision {
            StrategyDecision::SwapRoles => {
                // Recycle the stalled iterate as an auxiliary pivot: restart
                // from the pivot's position and pull toward the old iterate.
                let old = AuxPoint {
                    point: iterate.point().to_vec(),
                    coeffs: iterate.coeffs().to_vec(),
                };
                let (swap_point, beta) = project_to_segment(pc, vp, &old.point);
                let swap_gap = distance(&swap_point, pc);
                if swap_gap < plain_gap && swap_gap < gap {
                    let (v_coeffs, v_point) = if pid < n {
                        let mut c = vec![0.0; n];
                        c[pid] = 1.0;
                        (c, s.point(pid).to_vec())
                    } else {
                        (aux[pid - n].coeffs.clone(), aux[pid - n].point.clone())
                    };
                    iterate.replace(p, v_coeffs, v_point);
                    iterate.blend_with(p, &old.coeffs, &old.point, beta);
                    aux.push(old);
                    executed = n + aux.len() - 1;
                } else {
                    apply_plain_step(s, p, &mut iterate, &aux, pid, alpha);
                }
            }
            StrategyDecision::InsertCentroid => {
                let mut stepped = false;
                let ids = history.distinct_window_ids();
                if !ids.is_empty() && aux.len() < AUX_CAP {
                    let mut point = vec![0.0; s.dim()];
                    let mut coeffs = vec![0.0; n];
                    let w = 1.0 / ids.len() as f64;
                    for &id in &ids {
                        let (c_id, p_id): (Vec<f64>, &[f64]) = if id < n {
                            let mut c = vec![0.0; n];
                            c[id] = 1.0;
                            (c, s.point(id))
                        } else {
                            (aux[id - n].coeffs.clone(), &aux[id - n].point)
                        };
                        for (acc, x) in point.iter_mut().zip(p_id) {
                            *acc += w * x;
                        }
                        for (acc, x) in coeffs.iter_mut().zip(&c_id) {
                            *acc += w * x;
                        }
                    }
                    aux.push(AuxPoint { point, coeffs });
                    history.clear_window();
                    // The centroid exists to break the cycle, and under
                    // first-index scans the cycling vertices would keep
                    // shadowing it; pivot on it right away when it qualifies
                    // and beats the plain candidate.
                    let cent = aux.last().expect("just pushed");
                    if pivot_predicate(iterate.point(), pc, &cent.point) {
                        let (cent_point, beta) =
                            project_to_segment(pc, iterate.point(), &cent.point);
                        if distance(&cent_point, pc) < plain_gap {
                            let cent_coeffs = cent.coeffs.clone();
                            let cent_pt = cent.point.clone();
                            iterate.blend_with(p, &cent_coeffs, &cent_pt, beta);
                            executed = n + aux.len() - 1;
                            stepped = true;
                        }
                    }
                }
                if !stepped {
                    apply_plain_step(s, p, &mut iterate, &aux, pid, alpha);
                }
            }
            StrategyDecision::PlainStep => {
                apply_plain_step(s, p, &mut iterate, &aux, pid, alpha);
            }
        }

        let after = iterate.gap();
        if after >= gap {
            break StopReason::Stalled;
        }

        iterations += 1;
        v_cur = executed;
        let sine = (after / gap).min(1.0);
        recorder.record(after, sine.asin(), executed);
        if gap >= eps_r {
            max_sine = max_sine.max(sine);
            any_rated_step = true;
        }
        if matches!(tol.pivot_rule, PivotRule::StrategyI | PivotRule::StrategyIV) {
            history.push(executed, gap);
        }

        if tol.refresh_period > 0 && iterations % tol.refresh_period == 0 {
            iterate.refresh(s, p);
        }
    };

    let observed_nu = if any_rated_step {
        max_sine.max(SINE_FLOOR)
    } else {
        1.0
    };
    let stats = RunStats {
        iterations,
        gap_series: recorder.gaps,
        pivot_angle_series: recorder.angles,
        observed_nu,
        observed_c: 1.0 / (observed_nu * observed_nu) - 1.0,
        pivot_scans: scans,
    };

    let certificate = match stop {
        StopReason::Approx => Certificate::ApproxSolution {
            coeffs: iterate.coeffs().to_vec(),
            gap: iterate.gap(),
            radius,
            eps_used: tol.eps,
        },
        StopReason::Witness => build_witness_certificate(s, p, &iterate)
            .unwrap_or_else(|e| Certificate::Inconclusive {
                reason: format!("witness verification failed: {e}"),
            }),
        StopReason::EarlyStop => Certificate::Inconclusive {
            reason: "stopped early by caller".to_string(),
        },
        StopReason::MaxIters => Certificate::Inconclusive {
            reason: format!("iteration budget exhausted ({} iterations)", iterations),
        },
        StopReason::Stalled => Certificate::Inconclusive {
            reason: format!(
                "stalled: no numerical progress at gap {:.3e}",
                iterate.gap()
            ),
        },
    };

    SolveRun {
        certificate,
        stats,
        final_iterate: iterate,
        radius,
        stop,
        pivot_trace: recorder.pivots,
    }
}

fn apply_plain_step(
    s: &PointSet,
    p: &QueryPoint,
    iterate: &mut Iterate,
    aux: &[AuxPoint],
    pid: usize,
    alpha: f64,
) {
    if pid < s.len() {
        iterate.step_toward_vertex(s, p, pid, alpha);
    } else {
        let a = &aux[pid - s.len()];
        iterate.blend_with(p, &a.coeffs, &a.point, alpha);
    }
}

/// Decides the intersecting-balls problem for `balls` by solving membership of
/// the common point in the hull of the centers.
pub fn solve_intersecting_balls(balls: &BallSystem, tol: &Tolerances) -> BallsOutcome {
    let run = solve_with_options(
        balls.centers(),
        balls.common_point(),
        tol,
        SolveOptions::default(),
    );
    match run.certificate {
        cert @ Certificate::ApproxSolution { .. } => BallsOutcome::EmptyIntersection {
            certificate: cert,
            stats: run.stats,
        },
        Certificate::Witness { coeffs, .. } => BallsOutcome::IntersectionPoint {
            point: run.final_iterate.point().to_vec(),
            coeffs,
            stats: run.stats,
        },
        Certificate::Inconclusive { reason } => BallsOutcome::Inconclusive {
            reason,
            stats: run.stats,
        },
    }
}

