//! Solver variants: the coordinate-only virtual solver, its approximated
//! in-hull counterpart, the growing-face algorithm, and the decision plumbing
//! for the auxiliary-pivot strategy rules.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    cmp_tol, distance, pivot_predicate, project_to_segment, project_to_triangle,
    strict_pivot_predicate, Iterate, PivotRule, PointSet, QueryPoint, Tolerances,
};
use crate::solver::{
    select_pivot, separating_hyperplane, solve_with_options, Certificate, RunStats, SolveOptions,
    StopReason, AUX_CAP, SINE_FLOOR,
};

// ---------------------------------------------------------------------------
// Auxiliary-pivot strategy plumbing (used by the main engine)
// ---------------------------------------------------------------------------

/// Sliding window of recently accepted pivots, used to detect cycling.
/// Each entry is `(pivot id, gap before that step)`.
#[derive(Clone, Debug, Default)]
pub struct StrategyHistory {
    window: VecDeque<(usize, f64)>,
}

impl StrategyHistory {
    /// Window length for cycle detection.
    pub const WINDOW: usize = 20;
    /// A pivot chosen at least this often within the window counts as cycling.
    pub const CYCLE_COUNT: usize = 5;
    /// Relative gap reduction across a full window below which the window
    /// counts as stalled.
    pub const WINDOW_STALL: f64 = 0.01;
    /// Relative gap reduction of a single step below which the role swap is
    /// worth attempting.
    pub const STEP_STALL: f64 = 1e-3;

    pub fn new() -> Self {
        Self::default()
    }

    /// Records an accepted pivot and the gap the step started from.
    pub fn push(&mut self, pivot: usize, gap_before: f64) {
        if self.window.len() == Self::WINDOW {
            self.window.pop_front();
        }
        self.window.push_back((pivot, gap_before));
    }

    pub fn clear_window(&mut self) {
        self.window.clear();
    }

    fn is_full(&self) -> bool {
        self.window.len() == Self::WINDOW
    }

    fn window_start_gap(&self) -> Option<f64> {
        self.window.front().map(|&(_, g)| g)
    }

    fn max_frequency(&self) -> usize {
        let mut best = 0;
        for &(id, _) in &self.window {
            let count = self.window.iter().filter(|&&(j, _)| j == id).count();
            best = best.max(count);
        }
        best
    }

    /// The pivot ids that repeat within the window (the cycling set), sorted
    /// ascending and deduplicated.
    pub fn distinct_window_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .window
            .iter()
            .map(|&(id, _)| id)
            .filter(|&id| self.window.iter().filter(|&&(j, _)| j == id).count() >= 2)
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

/// Geometry of the step under consideration, computed by the engine before
/// asking the strategy rules what to do.
#[derive(Clone, Copy, Debug)]
pub struct TriggerGeometry {
    /// Gap before the step.
    pub gap: f64,
    /// Relative gap reduction `(gap - plain_gap) / gap` the plain step would
    /// achieve.
    pub relative_reduction: f64,
    /// Whether the selected pivot is a strict pivot.
    pub pivot_is_strict: bool,
    /// Whether `gap <= d(p, v_pivot)`.
    pub gap_within_pivot_distance: bool,
    /// Number of auxiliary points already inserted.
    pub aux_len: usize,
}

/// What the engine should do this iteration under a strategy rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyDecision {
    /// Take the ordinary segment step.
    PlainStep,
    /// Recycle the iterate as an auxiliary pivot and restart from the pivot's
    /// position (role swap).
    SwapRoles,
    /// Append the centroid of the cycling pivots as an auxiliary point, then
    /// take the ordinary step.
    InsertCentroid,
}

/// Decides the step form for the auxiliary-pivot rules.
///
/// The swap fires when the plain step would reduce the gap by less than 0.1%
/// and the swap's validity condition holds (the pivot is strict, or the gap is
/// at most the query-to-pivot distance — either way the old iterate remains a
/// usable pivot after the swap). Centroid insertion fires when one pivot was
/// chosen at least 5 times in the last 20 steps while the window reduced the
/// gap by less than 1%. Non-strategy rules always step plainly.
pub fn auxiliary_rule_wrap(
    rule: PivotRule,
    history: &StrategyHistory,
    geometry: &TriggerGeometry,
) -> StrategyDecision {
    match rule {
        PivotRule::StrategyI => {
            if geometry.aux_len < AUX_CAP
                && geometry.relative_reduction < StrategyHistory::STEP_STALL
                && (geometry.pivot_is_strict || geometry.gap_within_pivot_distance)
            {
                StrategyDecision::SwapRoles
            } else {
                StrategyDecision::PlainStep
            }
        }
        PivotRule::StrategyIV => {
            if geometry.aux_len < AUX_CAP && history.is_full() {
                if let Some(g0) = history.window_start_gap() {
                    let window_reduction = if g0 > 0.0 { (g0 - geometry.gap) / g0 } else { 1.0 };
                    if window_reduction < StrategyHistory::WINDOW_STALL
                        && history.max_frequency() >= StrategyHistory::CYCLE_COUNT
                    {
                        return StrategyDecision::InsertCentroid;
                    }
                }
            }
            StrategyDecision::PlainStep
        }
        _ => StrategyDecision::PlainStep,
    }
}

// ---------------------------------------------------------------------------
// Virtual solver (coordinates only)
// ---------------------------------------------------------------------------

/// Outcome of the coordinate-only solver: its iterates carry no convex
/// coefficients, so a feasibility answer comes without a reconstructible
/// certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VirtualOutcome {
    /// Coordinates of a point with `d(point, p) = gap < eps * d(p, v)`;
    /// the point lies in the hull if every step's precondition held, but no
    /// coefficient expansion is available.
    CoordApprox { point: Vec<f64>, gap: f64 },
    /// A point strictly closer to every set point than the query is. It need
    /// not lie in the hull, yet it still certifies `p` outside: the orthogonal
    /// bisector of `[p, point]` separates `p` from every `v_i`.
    GeneralWitness { point: Vec<f64> },
    Inconclusive { reason: String },
}

/// One virtual step: scale the pivot to the current gap's distance from `p`
/// (`v̄ = p + (δ/r)(v_j − p)`) and return the midpoint of the iterate and `v̄`.
///
/// Requires `v_j` to be a pivot for `p_prime` and `δ = d(p, p_prime) ≤
/// r = d(p, v_j)`; under that precondition the new gap is at most `(√3/2)·δ`.
/// The solvers establish `δ ≤ r` invariantly by starting at the nearest
/// vertex. Panics if `p = v_j` (zero scaling radius).
pub fn virtual_step(p_prime: &[f64], p: &[f64], v_j: &[f64]) -> Vec<f64> {
    assert_eq!(p_prime.len(), p.len(), "dimension mismatch");
    assert_eq!(v_j.len(), p.len(), "dimension mismatch");
    let delta = distance(p, p_prime);
    let r = distance(p, v_j);
    assert!(r > 0.0, "query point coincides with the pivot");
    debug_assert!(
        delta <= r + cmp_tol(r),
        "virtual step requires gap <= query-to-pivot distance"
    );
    debug_assert!(
        pivot_predicate(p_prime, p, v_j),
        "virtual step requires a pivot"
    );
    let scale = delta / r;
    (0..p.len())
        .map(|i| 0.5 * p_prime[i] + 0.5 * (p[i] + scale * (v_j[i] - p[i])))
        .collect()
}

/// Pivot scan over raw coordinates (no auxiliary points), mirroring the main
/// engine's selection semantics for each rule.
fn scan_point_pivot(
    s: &PointSet,
    p: &[f64],
    point: &[f64],
    v_cur: usize,
    rule: PivotRule,
    scans: &mut u64,
) -> Option<usize> {
    let n = s.len();
    let plain = |j: usize, scans: &mut u64| -> bool {
        *scans += 1;
        pivot_predicate(point, p, s.point(j))
    };
    match rule {
        PivotRule::FirstIndex | PivotRule::StrategyI | PivotRule::StrategyIV => {
            if v_cur < n && plain(v_cur, scans) {
                return Some(v_cur);
            }
            (0..n).find(|&j| j != v_cur && plain(j, scans))
        }
        PivotRule::StrictFirst => {
            let strict = |j: usize| strict_pivot_predicate(point, p, s.point(j));
            if v_cur < n && plain(v_cur, scans) && strict(v_cur) {
                return Some(v_cur);
            }
            let mut first_plain = None;
            for j in 0..n {
                if plain(j, scans) {
                    if strict(j) {
                        return Some(j);
                    }
                    if first_plain.is_none() {
                        first_plain = Some(j);
                    }
                }
            }
            first_plain
        }
        PivotRule::BestAngle | PivotRule::StrictBest => {
            let want_strict = rule == PivotRule::StrictBest;
            let mut best_strict: Option<(usize, f64)> = None;
            let mut best_plain: Option<(usize, f64)> = None;
            for j in 0..n {
                if !plain(j, scans) {
                    continue;
                }
                let v = s.point(j);
                let mut num = 0.0;
                let mut d2v = 0.0;
                let mut d2p = 0.0;
                for i in 0..p.len() {
                    let a = p[i] - point[i];
                    let b = v[i] - point[i];
                    num += a * b;
                    d2v += b * b;
                    d2p += a * a;
                }
                let cos = if d2v == 0.0 || d2p == 0.0 {
                    -2.0
                } else {
                    num / (d2v.sqrt() * d2p.sqrt())
                };
                let slot = if want_strict && strict_pivot_predicate(point, p, v) {
                    &mut best_strict
                } else {
                    &mut best_plain
                };
                if slot.map_or(true, |(_, c)| cos > c) {
                    *slot = Some((j, cos));
                }
            }
            best_strict.or(best_plain).map(|(j, _)| j)
        }
    }
}

/// Decides membership using virtual steps on raw coordinates.
///
/// Each iteration halves toward a scaled copy of the pivot, contracting the
/// gap by at least `√3/2` per step, so the iteration count is logarithmic in
/// `δ_0 / (ε R)` — but the iterates carry no coefficient expansion, so a
/// feasible answer is coordinates-only and an infeasible answer is a general
/// witness (a separating point not necessarily in the hull).
pub fn solve_virtual(s: &PointSet, p: &QueryPoint, tol: &Tolerances) -> (VirtualOutcome, RunStats) {
    assert_eq!(s.dim(), p.dim(), "dimension mismatch between set and query");
    tol.validate(s.len())
        .expect("invalid tolerances for this point set");

    let pc = p.coords();
    let radius = s.max_distance_from(pc);
    let zero_tol = cmp_tol(p.norm());
    let eps_r = tol.eps * radius;

    let (nearest, d0) = s.nearest_to(pc);
    let mut point: Vec<f64> = s.point(nearest).to_vec();
    let mut gap = d0;
    let mut v_cur = nearest;

    let mut stats = RunStats {
        gap_series: vec![gap],
        ..RunStats::default()
    };
    let mut max_sine = 0.0f64;
    let mut any_rated_step = false;
    let mut iterations = 0usize;

    let outcome = loop {
        if gap <= zero_tol {
            break VirtualOutcome::CoordApprox { point, gap };
        }
        let dv = distance(pc, s.point(v_cur));
        if gap < tol.eps * dv {
            break VirtualOutcome::CoordApprox { point, gap };
        }
        if iterations >= tol.max_iters {
            break VirtualOutcome::Inconclusive {
                reason: format!("iteration budget exhausted ({} iterations)", iterations),
            };
        }
        let Some(j) =
            scan_point_pivot(s, pc, &point, v_cur, tol.pivot_rule, &mut stats.pivot_scans)
        else {
            break VirtualOutcome::GeneralWitness { point };
        };

        let next = virtual_step(&point, pc, s.point(j));
        let after = distance(&next, pc);
        if after >= gap {
            break VirtualOutcome::Inconclusive {
                reason: format!("stalled: no numerical progress at gap {:.3e}", gap),
            };
        }
        let sine = (after / gap).min(1.0);
        stats.gap_series.push(after);
        stats.pivot_angle_series.push(sine.asin());
        if gap >= eps_r {
            max_sine = max_sine.max(sine);
            any_rated_step = true;
        }
        point = next;
        gap = after;
        v_cur = j;
        iterations += 1;
    };

    stats.iterations = iterations;
    stats.observed_nu = if any_rated_step {
        max_sine.max(SINE_FLOOR)
    } else {
        1.0
    };
    stats.observed_c = 1.0 / (stats.observed_nu * stats.observed_nu) - 1.0;
    (outcome, stats)
}

// ---------------------------------------------------------------------------
// Approximated virtual solver (in-hull, certificate-bearing)
// ---------------------------------------------------------------------------

/// Decides membership with virtual targets approximated inside the hull.
///
/// Each outer iteration aims the plain step at the virtual target `p̄''`
/// instead of the pivot itself, approximating `p̄''` by at most `tol.t_inner`
/// inner segment steps (which all carry coefficients, so full certificates
/// survive). The outer iterate accepts the inner result if it beats the plain
/// step, else the best point toward it, else the plain step — the outer gap
/// series stays strictly decreasing either way.
pub fn avta_solve(s: &PointSet, p: &QueryPoint, tol: &Tolerances) -> (Certificate, RunStats) {
    assert_eq!(s.dim(), p.dim(), "dimension mismatch between set and query");
    tol.validate(s.len())
        .expect("invalid tolerances for this point set");

    let pc = p.coords();
    let radius = s.max_distance_from(pc);
    let zero_tol = cmp_tol(p.norm());
    let eps_r = tol.eps * radius;

    let (nearest, _) = s.nearest_to(pc);
    let mut iterate = Iterate::at_vertex(s, p, nearest);
    let mut v_cur = nearest;

    let mut stats = RunStats {
        gap_series: vec![iterate.gap()],
        ..RunStats::default()
    };
    let mut max_sine = 0.0f64;
    let mut any_rated_step = false;
    let mut iterations = 0usize;

    let stop = loop {
        let gap = iterate.gap();
        if gap <= zero_tol {
            break StopReason::Approx;
        }
        let dv = distance(pc, s.point(v_cur));
        if gap < tol.eps * dv {
            break StopReason::Approx;
        }
        if iterations >= tol.max_iters {
            break StopReason::MaxIters;
        }
        let Some(j) = select_pivot(
            s,
            pc,
            &iterate,
            v_cur,
            &[],
            tol.pivot_rule,
            &mut stats.pivot_scans,
        ) else {
            break StopReason::Witness;
        };

        // Plain candidate.
        let (_, alpha) = project_to_segment(pc, iterate.point(), s.point(j));
        let mut plain = iterate.clone();
        plain.step_toward_vertex(s, p, j, alpha);
        let plain_gap = plain.gap();

        // Inner approximation of the virtual target.
        let target = virtual_step(iterate.point(), pc, s.point(j));
        let q = QueryPoint::new(target).expect("virtual target has finite coordinates");
        let q_tol = cmp_tol(q.norm());
        let (_, init_alpha) = project_to_segment(q.coords(), iterate.point(), s.point(j));
        let mut inner = iterate.clone();
        inner.step_toward_vertex(s, &q, j, init_alpha);
        let mut inner_witnessed = false;
        for _ in 1..tol.t_inner {
            if inner.gap() <= q_tol {
                break;
            }
            match select_pivot(
                s,
                q.coords(),
                &inner,
                usize::MAX,
                &[],
                tol.pivot_rule,
                &mut stats.pivot_scans,
            ) {
                Some(jj) => {
                    let (_, a) = project_to_segment(q.coords(), inner.point(), s.point(jj));
                    inner.step_toward_vertex(s, &q, jj, a);
                }
                None => {
                    inner_witnessed = true;
                    break;
                }
            }
        }

        if inner_witnessed {
            // The inner iterate separates the virtual target from the hull,
            // which proves the query infeasible — but a reportable certificate
            // needs a point that separates the query itself. Use it directly
            // when it does; otherwise keep iterating plainly until the
            // guaranteed query witness appears.
            let mut scans = 0u64;
            if select_pivot(
                s,
                pc,
                &inner,
                usize::MAX,
                &[],
                PivotRule::FirstIndex,
                &mut scans,
            )
            .is_none()
            {
                stats.pivot_scans += scans;
                iterate = inner;
                break StopReason::Witness;
            }
            stats.pivot_scans += scans;
        }

        // Acceptance chain: inner result, then the best point toward it, then
        // the plain step.
        let inner_gap = distance(inner.point(), pc);
        let mut accepted = false;
        if !inner_witnessed && inner_gap < plain_gap {
            let coeffs = inner.coeffs().to_vec();
            let point = inner.point().to_vec();
            iterate.replace(p, coeffs, point);
            accepted = true;
        } else if !inner_witnessed {
            let (_, beta) = project_to_segment(pc, iterate.point(), inner.point());
            let mut toward = iterate.clone();
            toward.blend_with(p, inner.coeffs(), inner.point(), beta);
            if toward.gap() < plain_gap {
                iterate = toward;
                accepted = true;
            }
        }
        if !accepted {
            iterate = plain;
        }

        let after = iterate.gap();
        if after >= gap {
            break StopReason::Stalled;
        }
        iterations += 1;
        v_cur = j;
        let sine = (after / gap).min(1.0);
        stats.gap_series.push(after);
        stats.pivot_angle_series.push(sine.asin());
        if gap >= eps_r {
            max_sine = max_sine.max(sine);
            any_rated_step = true;
        }
        if tol.refresh_period > 0 && iterations % tol.refresh_period == 0 {
            iterate.refresh(s, p);
        }
    };

    stats.iterations = iterations;
    stats.observed_nu = if any_rated_step {
        max_sine.max(SINE_FLOOR)
    } else {
        1.0
    };
    stats.observed_c = 1.0 / (stats.observed_nu * stats.observed_nu) - 1.0;

    let certificate = match stop {
        StopReason::Approx => Certificate::ApproxSolution {
            coeffs: iterate.coeffs().to_vec(),
            gap: iterate.gap(),
            radius,
            eps_used: tol.eps,
        },
        StopReason::Witness => match separating_hyperplane(iterate.point(), p, s) {
            Ok((normal, offset)) => {
                let gap = distance(iterate.point(), pc);
                Certificate::Witness {
                    coeffs: iterate.coeffs().to_vec(),
                    gap,
                    hyperplane_normal: normal,
                    hyperplane_offset: offset,
                    distance_lo: gap / 2.0,
                    distance_hi: gap,
                }
            }
            Err(e) => Certificate::Inconclusive {
                reason: format!("witness verification failed: {e}"),
            },
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
        StopReason::EarlyStop => unreachable!("no early-stop callback installed"),
    };
    (certificate, stats)
}

// ---------------------------------------------------------------------------
// Growing-face solver
// ---------------------------------------------------------------------------

/// The working face: the carried iterate (always the current nearest point of
/// the face to the query) plus up to `k_faces - 1` vertex anchors.
#[derive(Clone, Debug)]
pub struct FaceSet {
    carried: Iterate,
    anchor_indices: Vec<usize>,
}

impl FaceSet {
    fn singleton(carried: Iterate) -> Self {
        Self {
            carried,
            anchor_indices: Vec::new(),
        }
    }

    /// Number of points spanning the face (carried iterate + anchors).
    pub fn t_count(&self) -> usize {
        1 + self.anchor_indices.len()
    }

    /// Vertex indices anchoring the face (excludes the carried iterate).
    pub fn anchor_indices(&self) -> &[usize] {
        &self.anchor_indices
    }

    /// The carried hull point the face grew from.
    pub fn carried(&self) -> &Iterate {
        &self.carried
    }

    /// Exact distance from `q` to the face for `t <= 3`; `None` for larger
    /// faces (callers fall back to a certified bracket).
    fn exact_distance_to(&self, s: &PointSet, q: &[f64]) -> Option<f64> {
        match self.anchor_indices.len() {
            0 => Some(distance(q, self.carried.point())),
            1 => {
                let (pt, _) =
                    project_to_segment(q, self.carried.point(), s.point(self.anchor_indices[0]));
                Some(distance(&pt, q))
            }
            2 => {
                let (pt, _) = project_to_triangle(
                    q,
                    self.carried.point(),
                    s.point(self.anchor_indices[0]),
                    s.point(self.anchor_indices[1]),
                );
                Some(distance(&pt, q))
            }
            _ => None,
        }
    }

    /// Certified bracket `(lo, hi)` on the distance from `q` to the face:
    /// `hi` is the distance through the current argmin `x̂`, `lo` a support
    /// bound in direction `q − x̂` over all spanning points.
    fn distance_bracket_to(&self, s: &PointSet, q: &[f64], argmin: &[f64]) -> (f64, f64) {
        let hi = distance(q, argmin);
        if hi == 0.0 {
            return (0.0, 0.0);
        }
        let h: Vec<f64> = q.iter().zip(argmin).map(|(a, b)| a - b).collect();
        let mut max_support = f64::NEG_INFINITY;
        let mut consider = |a: &[f64]| {
            let v: f64 = h.iter().zip(a).map(|(x, y)| x * y).sum();
            if v > max_support {
                max_support = v;
            }
        };
        consider(self.carried.point());
        for &j in &self.anchor_indices {
            consider(s.point(j));
        }
        let hq: f64 = h.iter().zip(q).map(|(x, y)| x * y).sum();
        let lo = ((hq - max_support) / hi).max(0.0);
        (lo, hi)
    }
}

/// Decides membership growing a working face of up to `tol.k_faces` points.
///
/// Each cycle adds one generalized pivot — a vertex at least as far from the
/// whole face as from the query — and moves the iterate to the nearest point
/// of the grown face; when the face reaches `k_faces` points it collapses back
/// to the singleton of the current iterate. Bigger faces pull at least as hard
/// per cycle as smaller ones. With `k_faces = 2` the trajectory coincides
/// exactly with [`crate::solver::solve`] under the same pivot rule.
///
/// A cycle that finds no generalized pivot does not alone prove infeasibility
/// (the guarantee backing the witness claim only covers the plain predicate at
/// the face's nearest point), so the witness check always re-scans with the
/// plain predicate at the current iterate; if a plain pivot exists the face
/// collapses and the plain step runs instead.
pub fn delta_k_solve(s: &PointSet, p: &QueryPoint, tol: &Tolerances) -> (Certificate, RunStats) {
    assert_eq!(s.dim(), p.dim(), "dimension mismatch between set and query");
    tol.validate(s.len())
        .expect("invalid tolerances for this point set");

    let pc = p.coords();
    let n = s.len();
    let radius = s.max_distance_from(pc);
    let zero_tol = cmp_tol(p.norm());
    let eps_r = tol.eps * radius;
    let k = tol.k_faces;

    let (nearest, _) = s.nearest_to(pc);
    let mut iterate = Iterate::at_vertex(s, p, nearest);
    let mut v_cur = nearest;
    let mut face = FaceSet::singleton(iterate.clone());
    // Convex weights of the current iterate over [carried, anchors...].
    let mut face_weights: Vec<f64> = vec![1.0];

    let mut stats = RunStats {
        gap_series: vec![iterate.gap()],
        ..RunStats::default()
    };
    let mut max_sine = 0.0f64;
    let mut any_rated_step = false;
    let mut iterations = 0usize;

    let stop = loop {
        if face.t_count() == k {
            face = FaceSet::singleton(iterate.clone());
            face_weights = vec![1.0];
        }

        let gap = iterate.gap();
        if gap <= zero_tol {
            break StopReason::Approx;
        }
        let dv = distance(pc, s.point(v_cur));
        if gap < tol.eps * dv {
            break StopReason::Approx;
        }
        if iterations >= tol.max_iters {
            break StopReason::MaxIters;
        }

        // Select a pivot: plain predicate while the face is a singleton (the
        // same code path as the main engine, for trajectory parity), the
        // generalized set-distance predicate once the face has grown.
        let mut reset_before_step = false;
        let pid = if face.t_count() == 1 {
            match select_pivot(
                s,
                pc,
                &iterate,
                v_cur,
                &[],
                tol.pivot_rule,
                &mut stats.pivot_scans,
            ) {
                Some(j) => j,
                None => break StopReason::Witness,
            }
        } else {
            let generalized = (0..n).find(|&j| {
                stats.pivot_scans += 1;
                let v = s.point(j);
                let dpv = distance(pc, v);
                match face.exact_distance_to(s, v) {
                    Some(d) => d >= dpv,
                    None => {
                        let (lo, _) = face.distance_bracket_to(s, v, iterate.point());
                        lo >= dpv
                    }
                }
            });
            match generalized {
                Some(j) => j,
                None => {
                    // No generalized pivot. Only a plain no-pivot scan at the
                    // iterate soundly certifies a witness.
                    match select_pivot(
                        s,
                        pc,
                        &iterate,
                        v_cur,
                        &[],
                        tol.pivot_rule,
                        &mut stats.pivot_scans,
                    ) {
                        Some(j) => {
                            reset_before_step = true;
                            j
                        }
                        None => break StopReason::Witness,
                    }
                }
            }
        };
        if reset_before_step {
            face = FaceSet::singleton(iterate.clone());
            face_weights = vec![1.0];
        }

        // Grow the face with the pivot and move to its nearest point to p.
        face.anchor_indices.push(pid);
        face_weights.push(0.0);
        match face.t_count() {
            2 => {
                let (_, alpha) = project_to_segment(pc, face.carried.point(), s.point(pid));
                iterate = face.carried.clone();
                iterate.step_toward_vertex(s, p, pid, alpha);
                face_weights = vec![1.0 - alpha, alpha];
            }
            3 => {
                let a0 = face.anchor_indices[0];
                let (pt, bary) =
                    project_to_triangle(pc, face.carried.point(), s.point(a0), s.point(pid));
                let mut coeffs: Vec<f64> =
                    face.carried.coeffs().iter().map(|c| bary[0] * c).collect();
                coeffs[a0] += bary[1];
                coeffs[pid] += bary[2];
                iterate.replace(p, coeffs, pt);
                face_weights = vec![bary[0], bary[1], bary[2]];
            }
            _ => {
                // Approximate projection: an inner solve over the face's
                // spanning points, warm-started at the current iterate.
                let mut face_points: Vec<Vec<f64>> = vec![face.carried.point().to_vec()];
                for &j in &face.anchor_indices {
                    face_points.push(s.point(j).to_vec());
                }
                let face_set =
                    PointSet::new(s.dim(), &face_points).expect("face points are valid");
                let inner_tol = Tolerances::new(tol.eps / 4.0)
                    .expect("inner eps in range")
                    .with_rule(PivotRule::BestAngle)
                    .with_max_iters(100);
                let warm = Iterate::from_coeffs(&face_set, p, face_weights.clone())
                    .expect("face weights form a simplex vector");
                let run = solve_with_options(
                    &face_set,
                    p,
                    &inner_tol,
                    SolveOptions {
                        warm_start: Some(warm),
                        series_limit: 0,
                        ..SolveOptions::default()
                    },
                );
                stats.pivot_scans += run.stats.pivot_scans;
                if run.final_iterate.gap() < gap {
                    let w = run.final_iterate.coeffs();
                    let mut coeffs: Vec<f64> =
                        face.carried.coeffs().iter().map(|c| w[0] * c).collect();
                    for (idx, &j) in face.anchor_indices.iter().enumerate() {
                        coeffs[j] += w[idx + 1];
                    }
                    let point = run.final_iterate.point().to_vec();
                    iterate.replace(p, coeffs, point);
                    face_weights = w.to_vec();
                } else {
                    // Fall back to the plain step from the current iterate.
                    face = FaceSet::singleton(iterate.clone());
                    let (_, alpha) = project_to_segment(pc, iterate.point(), s.point(pid));
                    iterate.step_toward_vertex(s, p, pid, alpha);
                    face.anchor_indices.push(pid);
                    face_weights = vec![1.0 - alpha, alpha];
                }
            }
        }

        let after = iterate.gap();
        if after >= gap {
            break StopReason::Stalled;
        }
        iterations += 1;
        v_cur = pid;
        let sine = (after / gap).min(1.0);
        stats.gap_series.push(after);
        stats.pivot_angle_series.push(sine.asin());
        if gap >= eps_r {
            max_sine = max_sine.max(sine);
            any_rated_step = true;
        }
        if tol.refresh_period > 0 && iterations % tol.refresh_period == 0 {
            iterate.refresh(s, p);
        }
    };

    stats.iterations = iterations;
    stats.observed_nu = if any_rated_step {
        max_sine.max(SINE_FLOOR)
    } else {
        1.0
    };
    stats.observed_c = 1.0 / (stats.observed_nu * stats.observed_nu) - 1.0;

    let certificate = match stop {
        StopReason::Approx => Certificate::ApproxSolution {
            coeffs: iterate.coeffs().to_vec(),
            gap: iterate.gap(),
            radius,
            eps_used: tol.eps,
        },
        StopReason::Witness => match separating_hyperplane(iterate.point(), p, s) {
            Ok((normal, offset)) => {
                let gap = iterate.gap();
                Certificate::Witness {
                    coeffs: iterate.coeffs().to_vec(),
                    gap,
                    hyperplane_normal: normal,
                    hyperplane_offset: offset,
                    distance_lo: gap / 2.0,
                    distance_hi: gap,
                }
            }
            Err(e) => Certificate::Inconclusive {
                reason: format!("witness verification failed: {e}"),
            },
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
        StopReason::EarlyStop => unreachable!("no early-stop callback installed"),
    };
    (certificate, stats)
}
