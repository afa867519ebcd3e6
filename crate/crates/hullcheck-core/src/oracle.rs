//! Baselines and ground truth: a sparse-greedy (conditional-gradient) solver
//! for head-to-head comparison, and an exact nearest-point oracle for
//! desk-scale verification of certificates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    cmp_tol, dot, project_to_segment, squared_distance, GeometryError, PointSet, QueryPoint,
    Tolerances,
};
use crate::solver::{Certificate, RunStats, SINE_FLOOR};

/// Size guards for the exhaustive oracle (subset enumeration is exponential).
pub const ORACLE_MAX_POINTS: usize = 12;
pub const ORACLE_MAX_DIM: usize = 6;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(
        "oracle instance too large: {count} points in dimension {dim} \
         (limits: {ORACLE_MAX_POINTS} points, dimension {ORACLE_MAX_DIM})"
    )]
    TooLarge { count: usize, dim: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

// ---------------------------------------------------------------------------
// Sparse greedy baseline
// ---------------------------------------------------------------------------

/// State of the greedy minimizer of `f(x) = d(Σ x_i v_i, p)²` over the
/// simplex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GreedyState {
    x: Vec<f64>,
    objective: f64,
}

impl GreedyState {
    /// Starts at the unit vector for vertex `j`.
    pub fn at_vertex(s: &PointSet, p: &QueryPoint, j: usize) -> Self {
        let mut x = vec![0.0; s.len()];
        x[j] = 1.0;
        let objective = squared_distance(s.point(j), p.coords());
        Self { x, objective }
    }

    /// Starts from an explicit simplex vector (validated, clamped, and
    /// renormalized like an iterate's coefficients).
    pub fn from_simplex(s: &PointSet, p: &QueryPoint, x: Vec<f64>) -> Result<Self, GeometryError> {
        if x.len() != s.len() {
            return Err(GeometryError::CoefficientLength {
                expected: s.len(),
                got: x.len(),
            });
        }
        let mut sum = 0.0;
        for &v in &x {
            if !v.is_finite() || v < -cmp_tol(1.0) {
                return Err(GeometryError::NotASimplexPoint { sum: v });
            }
            sum += v;
        }
        if (sum - 1.0).abs() > cmp_tol(1.0) {
            return Err(GeometryError::NotASimplexPoint { sum });
        }
        let mut x: Vec<f64> = x.into_iter().map(|v| v.max(0.0)).collect();
        let total: f64 = x.iter().sum();
        for v in &mut x {
            *v /= total;
        }
        let objective = squared_distance(&s.combine(&x), p.coords());
        Ok(Self { x, objective })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// The hull point the state represents.
    pub fn point(&self, s: &PointSet) -> Vec<f64> {
        s.combine(&self.x)
    }
}

/// One greedy step: pick the coordinate with the smallest gradient component
/// `∂f/∂x_j = 2 v_jᵀ(Σ x_i v_i − p)` (lowest index on ties) and move by the
/// exact line-search step toward that vertex, clamped to the simplex. The
/// objective never increases.
pub fn greedy_step(state: &GreedyState, s: &PointSet, p: &QueryPoint) -> GreedyState {
    let pc = p.coords();
    let q = s.combine(&state.x);
    let residual: Vec<f64> = q.iter().zip(pc).map(|(a, b)| a - b).collect();
    let mut best_j = 0usize;
    let mut best_g = f64::INFINITY;
    for (j, v) in s.iter().enumerate() {
        let g = 2.0 * dot(v, &residual);
        if g < best_g {
            best_g = g;
            best_j = j;
        }
    }
    // Exact line search along x + α(e_j − x): the image moves along the
    // segment [q, v_j], so the optimal α is the segment projection's.
    let (point, alpha) = project_to_segment(pc, &q, s.point(best_j));
    let keep = 1.0 - alpha;
    let mut x: Vec<f64> = state.x.iter().map(|&v| keep * v).collect();
    x[best_j] += alpha;
    let objective = squared_distance(&point, pc);
    GreedyState { x, objective }
}

/// Drives [`greedy_step`] to an approximate-membership answer.
///
/// The greedy baseline has no witness mechanism: on infeasible instances the
/// objective converges to the positive squared hull distance and the run ends
/// `Inconclusive` (budget or stall). `pivot_scans` counts gradient-coordinate
/// evaluations (`n` per step).
pub fn greedy_run(s: &PointSet, p: &QueryPoint, tol: &Tolerances) -> (Certificate, RunStats) {
    assert_eq!(s.dim(), p.dim(), "dimension mismatch between set and query");
    tol.validate(s.len())
        .expect("invalid tolerances for this point set");

    let pc = p.coords();
    let radius = s.max_distance_from(pc);
    let zero_tol = cmp_tol(p.norm());
    let eps_r = tol.eps * radius;

    let (nearest, _) = s.nearest_to(pc);
    let mut state = GreedyState::at_vertex(s, p, nearest);

    let mut stats = RunStats {
        gap_series: vec![state.objective.sqrt()],
        ..RunStats::default()
    };
    let mut max_sine = 0.0f64;
    let mut any_rated_step = false;
    let mut iterations = 0usize;

    let certificate = loop {
        let gap = state.objective.sqrt();
        if gap <= zero_tol || gap < eps_r {
            break Certificate::ApproxSolution {
                coeffs: state.x.clone(),
                gap,
                radius,
                eps_used: tol.eps,
            };
        }
        if iterations >= tol.max_iters {
            break Certificate::Inconclusive {
                reason: format!("iteration budget exhausted ({} iterations)", iterations),
            };
        }
        let next = greedy_step(&state, s, p);
        stats.pivot_scans += s.len() as u64;
        let after = next.objective.sqrt();
        if after >= gap {
            break Certificate::Inconclusive {
                reason: format!("stalled: no numerical progress at gap {:.3e}", gap),
            };
        }
        state = next;
        iterations += 1;
        let sine = (after / gap).min(1.0);
        stats.gap_series.push(after);
        stats.pivot_angle_series.push(sine.asin());
        if gap >= eps_r {
            max_sine = max_sine.max(sine);
            any_rated_step = true;
        }
    };

    stats.iterations = iterations;
    stats.observed_nu = if any_rated_step {
        max_sine.max(SINE_FLOOR)
    } else {
        1.0
    };
    stats.observed_c = 1.0 / (stats.observed_nu * stats.observed_nu) - 1.0;
    (certificate, stats)
}

// ---------------------------------------------------------------------------
// Exact nearest-point oracle
// ---------------------------------------------------------------------------

/// Exact nearest point of the hull to `p` at desk scale, found by enumerating
/// every subset of at most `dim + 1` points in lexicographic depth-first
/// order, projecting `p` onto each subset's affine hull, and keeping the best
/// candidate whose barycentric coordinates are nonnegative (within `1e-12`,
/// clamped). Affinely dependent subsets are skipped — a minimal support is
/// affinely independent, so no optimum is lost. Ties keep the first
/// (lexicographically smallest) support.
///
/// Returns `(point, distance, support)`.
pub fn oracle_nearest(
    s: &PointSet,
    p: &QueryPoint,
) -> Result<(Vec<f64>, f64, Vec<usize>), OracleError> {
    assert_eq!(s.dim(), p.dim(), "dimension mismatch between set and query");
    if s.len() > ORACLE_MAX_POINTS || s.dim() > ORACLE_MAX_DIM {
        return Err(OracleError::TooLarge {
            count: s.len(),
            dim: s.dim(),
        });
    }
    let pc = p.coords();
    let cap = (s.dim() + 1).min(s.len());

    let mut best: Option<(f64, Vec<f64>, Vec<usize>)> = None;
    let mut subset: Vec<usize> = Vec::with_capacity(cap);
    enumerate(s, pc, cap, 0, &mut subset, &mut best);
    let (d2, point, support) = best.expect("at least the singleton subsets are evaluated");
    Ok((point, d2.sqrt(), support))
}

fn enumerate(
    s: &PointSet,
    pc: &[f64],
    cap: usize,
    start: usize,
    subset: &mut Vec<usize>,
    best: &mut Option<(f64, Vec<f64>, Vec<usize>)>,
) {
    for j in start..s.len() {
        subset.push(j);
        if let Some((point, d2)) = project_onto_subset(s, pc, subset) {
            if best.as_ref().map_or(true, |(b, _, _)| d2 < *b) {
                *best = Some((d2, point, subset.clone()));
            }
        }
        if subset.len() < cap {
            enumerate(s, pc, cap, j + 1, subset, best);
        }
        subset.pop();
    }
}

/// Projects `p` onto the affine hull of the subset and returns the candidate
/// point and its squared distance, or `None` when the subset is affinely
/// dependent or the projection leaves the simplex.
fn project_onto_subset(s: &PointSet, pc: &[f64], subset: &[usize]) -> Option<(Vec<f64>, f64)> {
    let t = subset.len();
    let w0 = s.point(subset[0]);
    if t == 1 {
        return Some((w0.to_vec(), squared_distance(w0, pc)));
    }

    // Normal equations over the difference basis u_i = w_i - w_0.
    let k = t - 1;
    let dim = s.dim();
    let mut u: Vec<Vec<f64>> = Vec::with_capacity(k);
    for &idx in &subset[1..] {
        let w = s.point(idx);
        u.push((0..dim).map(|d| w[d] - w0[d]).collect());
    }
    let rhs0: Vec<f64> = (0..dim).map(|d| pc[d] - w0[d]).collect();

    let mut g = vec![vec![0.0f64; k + 1]; k];
    let mut scale = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let v = dot(&u[i], &u[j]);
            g[i][j] = v;
            scale = scale.max(v.abs());
        }
        g[i][k] = dot(&u[i], &rhs0);
    }

    // Gaussian elimination with partial pivoting; a tiny pivot marks the
    // subset affinely dependent.
    let pivot_tol = cmp_tol(scale);
    for col in 0..k {
        let (pivot_row, pivot_val) = (col..k)
            .map(|r| (r, g[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty column");
        if pivot_val <= pivot_tol {
            return None;
        }
        g.swap(col, pivot_row);
        for r in (col + 1)..k {
            let factor = g[r][col] / g[col][col];
            for c in col..=k {
                g[r][c] -= factor * g[col][c];
            }
        }
    }
    let mut c = vec![0.0f64; k];
    for row in (0..k).rev() {
        let mut acc = g[row][k];
        for col in (row + 1)..k {
            acc -= g[row][col] * c[col];
        }
        c[row] = acc / g[row][row];
    }

    let mut lambda = Vec::with_capacity(t);
    lambda.push(1.0 - c.iter().sum::<f64>());
    lambda.extend_from_slice(&c);
    let lam_scale = lambda.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if lambda.iter().any(|&v| v < -cmp_tol(lam_scale)) {
        return None;
    }
    for v in &mut lambda {
        *v = v.max(0.0);
    }
    let total: f64 = lambda.iter().sum();
    for v in &mut lambda {
        *v /= total;
    }

    let mut point = vec![0.0f64; dim];
    for (lam, &idx) in lambda.iter().zip(subset) {
        let w = s.point(idx);
        for d in 0..dim {
            point[d] += lam * w[d];
        }
    }
    let d2 = squared_distance(&point, pc);
    Some((point, d2))
}

/// Three-way exact membership verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipVerdict {
    Inside,
    Outside,
    Ambiguous,
}

/// Classifies `p` against the hull: `Inside` when the exact distance is zero
/// within `1e-12·(1+‖p‖)`, `Outside` when it exceeds `margin`, `Ambiguous` in
/// between (used to exclude boundary-noise cases from equivalence tests).
pub fn oracle_membership(
    s: &PointSet,
    p: &QueryPoint,
    margin: f64,
) -> Result<MembershipVerdict, OracleError> {
    assert!(margin >= 0.0, "margin must be nonnegative");
    let (_, dist, _) = oracle_nearest(s, p)?;
    Ok(if dist <= cmp_tol(p.norm()) {
        MembershipVerdict::Inside
    } else if dist > margin {
        MembershipVerdict::Outside
    } else {
        MembershipVerdict::Ambiguous
    })
}
