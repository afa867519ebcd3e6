//! Dense geometric primitives shared by every solver in this crate.
//!
//! Points are flat `f64` slices. The hot predicates are written in squared /
//! sqrt-free form so inner loops never take square roots, and every comparison
//! that has to survive floating point goes through [`cmp_tol`], an
//! absolute-plus-relative tolerance.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Base comparison tolerance. Effective tolerances scale as `1e-12 * (1 + scale)`.
pub const CMP_TOL: f64 = 1e-12;

/// Absolute-plus-relative comparison tolerance for quantities of magnitude `scale`.
#[inline]
pub fn cmp_tol(scale: f64) -> f64 {
    CMP_TOL * (1.0 + scale.abs())
}

/// Validation errors for geometric inputs.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("point {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("point {index} contains a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("point set must contain at least one point")]
    EmptySet,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("coefficient vector has {got} entries, expected {expected}")]
    CoefficientLength { expected: usize, got: usize },
    #[error("coefficients must be nonnegative and sum to 1 (sum was {sum})")]
    NotASimplexPoint { sum: f64 },
    #[error("eps must lie in the open interval (0,1), got {0}")]
    EpsOutOfRange(f64),
    #[error("max_iters must be positive")]
    ZeroMaxIters,
    #[error("k_faces must satisfy 2 <= k <= n (k={k}, n={n})")]
    KFacesOutOfRange { k: usize, n: usize },
    #[error("t_inner must be positive")]
    ZeroTInner,
    #[error("radius {index} must be positive and match the common point distance (expected {expected}, got {got})")]
    RadiusMismatch {
        index: usize,
        expected: f64,
        got: f64,
    },
}

/// A finite set of points in `R^m`, stored row-major in one contiguous buffer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    data: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from per-point rows, validating dimensions and finiteness.
    pub fn new(dim: usize, points: &[Vec<f64>]) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if points.is_empty() {
            return Err(GeometryError::EmptySet);
        }
        let mut data = Vec::with_capacity(dim * points.len());
        for (index, row) in points.iter().enumerate() {
            if row.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    index,
                    expected: dim,
                    got: row.len(),
                });
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(GeometryError::NonFinite { index });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    /// Builds a point set from a flat row-major buffer of `n * dim` values.
    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if data.is_empty() || data.len() % dim != 0 {
            return Err(GeometryError::EmptySet);
        }
        if let Some(bad) = data.chunks_exact(dim).position(|p| p.iter().any(|x| !x.is_finite())) {
            return Err(GeometryError::NonFinite { index: bad });
        }
        Ok(Self { dim, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points.
    #[inline]
    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Borrow point `i` as a coordinate slice.
    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    /// Evaluates the convex combination `sum_i coeffs[i] * v_i`.
    pub fn combine(&self, coeffs: &[f64]) -> Vec<f64> {
        assert_eq!(coeffs.len(), self.len(), "coefficient count mismatch");
        let mut out = vec![0.0; self.dim];
        for (c, v) in coeffs.iter().zip(self.iter()) {
            if *c != 0.0 {
                for (o, x) in out.iter_mut().zip(v) {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// Index of the point nearest to `q` (lowest index wins ties) and its distance.
    pub fn nearest_to(&self, q: &[f64]) -> (usize, f64) {
        let mut best = (0usize, squared_distance(self.point(0), q));
        for i in 1..self.len() {
            let d2 = squared_distance(self.point(i), q);
            if d2 < best.1 {
                best = (i, d2);
            }
        }
        (best.0, best.1.sqrt())
    }

    /// Largest distance from `q` to any point of the set.
    pub fn max_distance_from(&self, q: &[f64]) -> f64 {
        self.iter()
            .map(|v| squared_distance(v, q))
            .fold(0.0f64, f64::max)
            .sqrt()
    }
}

/// The query point whose membership in the hull is being decided.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryPoint {
    coords: Vec<f64>,
}

impl QueryPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::ZeroDimension);
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::NonFinite { index: 0 });
        }
        Ok(Self { coords })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Pivot selection rules for the solver family.
///
/// * `FirstIndex` — retest the current vertex, then accept the lowest-index
///   qualifying vertex. Cheapest per iteration.
/// * `BestAngle` — scan every vertex and pick the qualifying one with the
///   smallest angle at the iterate (strongest single-step contraction).
/// * `StrictFirst` / `StrictBest` — prefer vertices that additionally satisfy
///   the right-angle condition `(p'-p)^T (v-p) <= 0`; fall back to plain
///   qualifying vertices so termination claims remain sound.
/// * `StrategyI` — first-index selection plus the iterate-swap move that
///   recycles a stalled iterate as an auxiliary pivot.
/// * `StrategyIV` — first-index selection plus cycling detection that inserts
///   the centroid of recurring pivots as an auxiliary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PivotRule {
    FirstIndex,
    BestAngle,
    StrictFirst,
    StrictBest,
    StrategyI,
    StrategyIV,
}

impl Default for PivotRule {
    fn default() -> Self {
        PivotRule::FirstIndex
    }
}

impl std::fmt::Display for PivotRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            PivotRule::FirstIndex => "first-index",
            PivotRule::BestAngle => "best-angle",
            PivotRule::StrictFirst => "strict-first",
            PivotRule::StrictBest => "strict-best",
            PivotRule::StrategyI => "strategy-i",
            PivotRule::StrategyIV => "strategy-iv",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for PivotRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first-index" | "first" => Ok(PivotRule::FirstIndex),
            "best-angle" | "best" => Ok(PivotRule::BestAngle),
            "strict-first" => Ok(PivotRule::StrictFirst),
            "strict-best" => Ok(PivotRule::StrictBest),
            "strategy-i" => Ok(PivotRule::StrategyI),
            "strategy-iv" => Ok(PivotRule::StrategyIV),
            other => Err(format!("unknown pivot rule '{other}'")),
        }
    }
}

/// Solver controls: target accuracy plus iteration/bookkeeping knobs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative accuracy target in (0,1): stop once gap < eps * d(p, v_current).
    pub eps: f64,
    /// Hard iteration cap; exceeding it yields an inconclusive outcome.
    pub max_iters: usize,
    pub pivot_rule: PivotRule,
    /// Every this many steps the iterate point is recomputed from its
    /// coefficients and the coefficients renormalized, bounding drift.
    pub refresh_period: usize,
    /// Inner-iteration budget for the virtual-target variant.
    pub t_inner: usize,
    /// Number of carried hull points for the growing-face variant.
    pub k_faces: usize,
}

impl Tolerances {
    pub fn new(eps: f64) -> Result<Self, GeometryError> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(GeometryError::EpsOutOfRange(eps));
        }
        Ok(Self {
            eps,
            max_iters: 10_000_000,
            pivot_rule: PivotRule::FirstIndex,
            refresh_period: 1000,
            t_inner: 5,
            k_faces: 2,
        })
    }

    pub fn with_rule(mut self, rule: PivotRule) -> Self {
        self.pivot_rule = rule;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_t_inner(mut self, t_inner: usize) -> Self {
        self.t_inner = t_inner;
        self
    }

    pub fn with_k_faces(mut self, k_faces: usize) -> Self {
        self.k_faces = k_faces;
        self
    }

    /// Validates the fields against a point set of size `n`.
    pub fn validate(&self, n: usize) -> Result<(), GeometryError> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(GeometryError::EpsOutOfRange(self.eps));
        }
        if self.max_iters == 0 {
            return Err(GeometryError::ZeroMaxIters);
        }
        if self.t_inner == 0 {
            return Err(GeometryError::ZeroTInner);
        }
        // The working face holds the carried iterate plus up to k-1 vertex
        // anchors, so any k up to n + 1 is meaningful.
        if self.k_faces < 2 || self.k_faces > n + 1 {
            return Err(GeometryError::KFacesOutOfRange {
                k: self.k_faces,
                n,
            });
        }
        Ok(())
    }
}

/// Squared Euclidean distance. Panics if the slices differ in length.
#[inline]
pub fn squared_distance(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(u.len(), v.len(), "dimension mismatch");
    let mut acc = 0.0;
    for i in 0..u.len() {
        let d = u[i] - v[i];
        acc += d * d;
    }
    acc
}

/// Euclidean distance. Panics if the slices differ in length.
#[inline]
pub fn distance(u: &[f64], v: &[f64]) -> f64 {
    squared_distance(u, v).sqrt()
}

#[inline]
pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(u.len(), v.len(), "dimension mismatch");
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

#[inline]
pub(crate) fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

/// Whether `v` qualifies as a pivot for iterate `p_prime` relative to `p`,
/// i.e. `d(p', v) >= d(p, v)`, evaluated in the expanded sqrt-free form
/// `||p'||^2 - ||p||^2 >= 2 v^T (p' - p)`.
#[inline]
pub fn pivot_predicate(p_prime: &[f64], p: &[f64], v: &[f64]) -> bool {
    assert_eq!(p_prime.len(), p.len(), "dimension mismatch");
    assert_eq!(p.len(), v.len(), "dimension mismatch");
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for i in 0..p.len() {
        lhs += p_prime[i] * p_prime[i] - p[i] * p[i];
        rhs += 2.0 * v[i] * (p_prime[i] - p[i]);
    }
    lhs >= rhs
}

/// Whether `v` is a strict pivot: the angle at `p` between `p'` and `v` is at
/// least a right angle, i.e. `(p' - p)^T (v - p) <= 0`.
#[inline]
pub fn strict_pivot_predicate(p_prime: &[f64], p: &[f64], v: &[f64]) -> bool {
    assert_eq!(p_prime.len(), p.len(), "dimension mismatch");
    assert_eq!(p.len(), v.len(), "dimension mismatch");
    let mut acc = 0.0;
    for i in 0..p.len() {
        acc += (p_prime[i] - p[i]) * (v[i] - p[i]);
    }
    acc <= 0.0
}

/// Nearest point to `p` on the segment `[a, b]`.
///
/// Returns the projected point and the clamped line parameter `alpha` in
/// `[0,1]` such that the point equals `(1-alpha)*a + alpha*b`. A degenerate
/// segment (`a == b`) yields `alpha = 0`.
pub fn project_to_segment(p: &[f64], a: &[f64], b: &[f64]) -> (Vec<f64>, f64) {
    assert_eq!(p.len(), a.len(), "dimension mismatch");
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..p.len() {
        let e = b[i] - a[i];
        num += (p[i] - a[i]) * e;
        den += e * e;
    }
    let alpha = if den > 0.0 {
        (num / den).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let point = a
        .iter()
        .zip(b)
        .map(|(x, y)| (1.0 - alpha) * x + alpha * y)
        .collect();
    (point, alpha)
}

/// Nearest point to `p` on the triangle `conv{a, b, c}`.
///
/// Returns the projected point and its barycentric coordinates `(wa, wb, wc)`.
/// The interior candidate is computed from the 2x2 normal equations on the
/// edge basis; boundary optima are delegated to [`project_to_segment`] so an
/// exterior `p` whose nearest point lies on edge `ab` reproduces that
/// projection exactly. Degenerate (collinear) triangles fall back to the best
/// edge.
pub fn project_to_triangle(p: &[f64], a: &[f64], b: &[f64], c: &[f64]) -> (Vec<f64>, [f64; 3]) {
    assert_eq!(p.len(), a.len(), "dimension mismatch");
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    assert_eq!(b.len(), c.len(), "dimension mismatch");
    let m = p.len();

    let e1: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let e2: Vec<f64> = c.iter().zip(a).map(|(x, y)| x - y).collect();
    let pa: Vec<f64> = p.iter().zip(a).map(|(x, y)| x - y).collect();
    let g11 = dot(&e1, &e1);
    let g12 = dot(&e1, &e2);
    let g22 = dot(&e2, &e2);
    let r1 = dot(&pa, &e1);
    let r2 = dot(&pa, &e2);
    let det = g11 * g22 - g12 * g12;

    let mut best: Option<(f64, Vec<f64>, [f64; 3])> = None;

    // Interior candidate, restricted to the open triangle: boundary optima are
    // produced by the edge candidates below with identical arithmetic.
    let scale = g11.max(g22);
    if det > cmp_tol(scale * scale) {
        let s = (g22 * r1 - g12 * r2) / det;
        let t = (g11 * r2 - g12 * r1) / det;
        if s > 0.0 && t > 0.0 && s + t < 1.0 {
            let mut point = Vec::with_capacity(m);
            for i in 0..m {
                point.push(a[i] + s * e1[i] + t * e2[i]);
            }
            let d2 = squared_distance(&point, p);
            best = Some((d2, point, [1.0 - s - t, s, t]));
        }
    }

    let edges: [(&[f64], &[f64], [usize; 2]); 3] =
        [(a, b, [0, 1]), (a, c, [0, 2]), (b, c, [1, 2])];
    for (u, v, idx) in edges {
        let (point, alpha) = project_to_segment(p, u, v);
        let d2 = squared_distance(&point, p);
        if best.as_ref().map_or(true, |(bd, _, _)| d2 < *bd) {
            let mut bary = [0.0; 3];
            bary[idx[0]] = 1.0 - alpha;
            bary[idx[1]] = alpha;
            best = Some((d2, point, bary));
        }
    }

    let (_, point, bary) = best.expect("triangle projection always has a candidate");
    (point, bary)
}

/// A feasible iterate: a point of the hull carried together with the convex
/// coefficients that express it over the original point set, plus its cached
/// distance to the query point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Iterate {
    coeffs: Vec<f64>,
    point: Vec<f64>,
    gap: f64,
}

impl Iterate {
    /// Starts at vertex `j` of the set.
    pub fn at_vertex(s: &PointSet, p: &QueryPoint, j: usize) -> Self {
        assert_eq!(s.dim(), p.dim(), "dimension mismatch");
        let mut coeffs = vec![0.0; s.len()];
        coeffs[j] = 1.0;
        let point = s.point(j).to_vec();
        let gap = distance(&point, p.coords());
        Self { coeffs, point, gap }
    }

    /// Builds an iterate from explicit convex coefficients, validating that
    /// they are nonnegative and sum to 1 within tolerance.
    pub fn from_coeffs(
        s: &PointSet,
        p: &QueryPoint,
        coeffs: Vec<f64>,
    ) -> Result<Self, GeometryError> {
        if coeffs.len() != s.len() {
            return Err(GeometryError::CoefficientLength {
                expected: s.len(),
                got: coeffs.len(),
            });
        }
        let sum: f64 = coeffs.iter().sum();
        if coeffs.iter().any(|&c| c < -cmp_tol(1.0)) || (sum - 1.0).abs() > cmp_tol(1.0) {
            return Err(GeometryError::NotASimplexPoint { sum });
        }
        let mut coeffs = coeffs;
        for c in coeffs.iter_mut() {
            if *c < 0.0 {
                *c = 0.0;
            }
        }
        let total: f64 = coeffs.iter().sum();
        for c in coeffs.iter_mut() {
            *c /= total;
        }
        let point = s.combine(&coeffs);
        let gap = distance(&point, p.coords());
        Ok(Self { coeffs, point, gap })
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]
    pub fn point(&self) -> &[f64] {
        &self.point
    }

    /// Distance from this iterate to the query point.
    #[inline]
    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// Moves the iterate to `(1-alpha) * self + alpha * v_j`. `alpha` must lie
    /// in `[0,1]`, which keeps every coefficient nonnegative.
    pub fn step_toward_vertex(&mut self, s: &PointSet, p: &QueryPoint, j: usize, alpha: f64) {
        debug_assert!((0.0..=1.0).contains(&alpha));
        let keep = 1.0 - alpha;
        for c in self.coeffs.iter_mut() {
            *c *= keep;
        }
        self.coeffs[j] += alpha;
        let v = s.point(j);
        for (x, vx) in self.point.iter_mut().zip(v) {
            *x = keep * *x + alpha * vx;
        }
        self.gap = distance(&self.point, p.coords());
    }

    /// Moves the iterate to `(1-beta) * self + beta * other`, where `other` is
    /// any hull point carried with its own coefficient expansion.
    pub fn blend_with(
        &mut self,
        p: &QueryPoint,
        other_coeffs: &[f64],
        other_point: &[f64],
        beta: f64,
    ) {
        debug_assert!((0.0..=1.0).contains(&beta));
        debug_assert_eq!(other_coeffs.len(), self.coeffs.len());
        let keep = 1.0 - beta;
        for (c, oc) in self.coeffs.iter_mut().zip(other_coeffs) {
            *c = keep * *c + beta * oc;
        }
        for (x, ox) in self.point.iter_mut().zip(other_point) {
            *x = keep * *x + beta * ox;
        }
        self.gap = distance(&self.point, p.coords());
    }

    /// Replaces the iterate wholesale (coefficients already expanded over `s`).
    pub fn replace(&mut self, p: &QueryPoint, coeffs: Vec<f64>, point: Vec<f64>) {
        debug_assert_eq!(coeffs.len(), self.coeffs.len());
        self.coeffs = coeffs;
        self.point = point;
        self.gap = distance(&self.point, p.coords());
    }

    /// Recomputes the cached point from the coefficients and renormalizes the
    /// coefficient sum, bounding accumulated drift. Returns the refreshed gap.
    pub fn refresh(&mut self, s: &PointSet, p: &QueryPoint) -> f64 {
        let total: f64 = self.coeffs.iter().sum();
        if total > 0.0 && (total - 1.0).abs() > 0.0 {
            for c in self.coeffs.iter_mut() {
                *c /= total;
            }
        }
        self.point = s.combine(&self.coeffs);
        self.gap = distance(&self.point, p.coords());
        self.gap
    }
}
