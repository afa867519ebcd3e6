//! Python bindings for the hullcheck solvers.
//!
//! The module mirrors the core crate's interface: a `PointSet` class plus the
//! solver entry points (`solve`, `solve_virtual`, `delta_k_solve`,
//! `greedy_run`), the exact small-instance oracle (`oracle_membership`,
//! `oracle_nearest`), and the feasibility reductions (`two_phase_solve`,
//! `bounded_m_solve`). Results come back as frozen objects whose fields carry
//! everything needed to re-verify a certificate from Python alone.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hullcheck_core::{
    bounded_m_solve as core_bounded_m_solve, delta_k_solve as core_delta_k_solve,
    greedy_run as core_greedy_run, oracle_membership as core_oracle_membership,
    oracle_nearest as core_oracle_nearest, solve as core_solve,
    solve_virtual as core_solve_virtual, two_phase_solve as core_two_phase_solve, Certificate,
    LpContext, LpResult, MembershipVerdict, PivotRule, QueryPoint, RunStats, Tolerances,
    VirtualOutcome,
};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite set of points spanning the hull, stored row-major.
#[pyclass(frozen, name = "PointSet")]
struct PyPointSet {
    inner: hullcheck_core::PointSet,
}

#[pymethods]
impl PyPointSet {
    /// Builds a point set from a non-empty list of equal-length rows.
    #[new]
    fn new(points: Vec<Vec<f64>>) -> PyResult<Self> {
        let dim = points
            .first()
            .map(|row| row.len())
            .ok_or_else(|| PyValueError::new_err("point set must not be empty"))?;
        for (i, row) in points.iter().enumerate() {
            if row.len() != dim {
                return Err(PyValueError::new_err(format!(
                    "row {i} has {} coordinates, expected {dim}",
                    row.len()
                )));
            }
        }
        let inner = hullcheck_core::PointSet::new(dim, &points).map_err(value_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// The `i`-th point as a list.
    fn point(&self, i: usize) -> PyResult<Vec<f64>> {
        if i >= self.inner.len() {
            return Err(PyValueError::new_err(format!(
                "point index {i} out of range for {} points",
                self.inner.len()
            )));
        }
        Ok(self.inner.point(i).to_vec())
    }

    /// All points as a list of lists.
    fn points(&self) -> Vec<Vec<f64>> {
        self.inner.iter().map(|p| p.to_vec()).collect()
    }

    /// The convex combination `sum coeffs[i] * points[i]`.
    fn combine(&self, coeffs: Vec<f64>) -> PyResult<Vec<f64>> {
        if coeffs.len() != self.inner.len() {
            return Err(PyValueError::new_err(format!(
                "{} coefficients for {} points",
                coeffs.len(),
                self.inner.len()
            )));
        }
        Ok(self.inner.combine(&coeffs))
    }

    fn __repr__(&self) -> String {
        format!(
            "PointSet(dim={}, len={})",
            self.inner.dim(),
            self.inner.len()
        )
    }
}

/// Outcome of a membership run: a certificate plus run statistics.
#[pyclass(frozen, get_all, name = "SolveResult")]
struct PySolveResult {
    /// "approx_solution", "witness", or "inconclusive".
    kind: String,
    /// Final recorded gap `d(iterate, query)`.
    gap: f64,
    /// Convex coefficients of the final iterate (None when inconclusive).
    coeffs: Option<Vec<f64>>,
    /// `max_i d(query, v_i)`, the scale the stop test is relative to.
    radius: Option<f64>,
    eps_used: Option<f64>,
    hyperplane_normal: Option<Vec<f64>>,
    hyperplane_offset: Option<f64>,
    distance_lo: Option<f64>,
    distance_hi: Option<f64>,
    reason: Option<String>,
    iterations: usize,
    pivot_scans: u64,
    observed_nu: f64,
    observed_c: f64,
    gap_series: Vec<f64>,
}

#[pymethods]
impl PySolveResult {
    fn __repr__(&self) -> String {
        format!(
            "SolveResult(kind='{}', gap={:e}, iterations={})",
            self.kind, self.gap, self.iterations
        )
    }
}

fn solve_result(certificate: Certificate, stats: RunStats) -> PySolveResult {
    let last_gap = stats.gap_series.last().copied().unwrap_or(f64::NAN);
    let mut out = PySolveResult {
        kind: certificate.kind_name().to_string(),
        gap: last_gap,
        coeffs: None,
        radius: None,
        eps_used: None,
        hyperplane_normal: None,
        hyperplane_offset: None,
        distance_lo: None,
        distance_hi: None,
        reason: None,
        iterations: stats.iterations,
        pivot_scans: stats.pivot_scans,
        observed_nu: stats.observed_nu,
        observed_c: stats.observed_c,
        gap_series: stats.gap_series,
    };
    match certificate {
        Certificate::ApproxSolution {
            coeffs,
            gap,
            radius,
            eps_used,
        } => {
            out.gap = gap;
            out.coeffs = Some(coeffs);
            out.radius = Some(radius);
            out.eps_used = Some(eps_used);
        }
        Certificate::Witness {
            coeffs,
            gap,
            hyperplane_normal,
            hyperplane_offset,
            distance_lo,
            distance_hi,
        } => {
            out.gap = gap;
            out.coeffs = Some(coeffs);
            out.hyperplane_normal = Some(hyperplane_normal);
            out.hyperplane_offset = Some(hyperplane_offset);
            out.distance_lo = Some(distance_lo);
            out.distance_hi = Some(distance_hi);
        }
        Certificate::Inconclusive { reason } => out.reason = Some(reason),
    }
    out
}

/// Outcome of a coordinate-only virtual run.
#[pyclass(frozen, get_all, name = "VirtualResult")]
struct PyVirtualResult {
    /// "coord_approx", "general_witness", or "inconclusive".
    kind: String,
    point: Option<Vec<f64>>,
    gap: Option<f64>,
    reason: Option<String>,
    iterations: usize,
    gap_series: Vec<f64>,
}

#[pymethods]
impl PyVirtualResult {
    fn __repr__(&self) -> String {
        format!(
            "VirtualResult(kind='{}', iterations={})",
            self.kind, self.iterations
        )
    }
}

/// Outcome of a feasibility reduction.
#[pyclass(frozen, get_all, name = "LpOutcome")]
struct PyLpOutcome {
    /// "approx_feasible", "infeasible_certificate", or "inconclusive".
    kind: String,
    x0: Option<Vec<f64>>,
    residual: Option<f64>,
    bound: Option<f64>,
    /// Which reduction produced an infeasibility certificate, if any.
    context: Option<String>,
    /// Witness gap of the inner certificate, if any.
    witness_gap: Option<f64>,
    reason: Option<String>,
    iterations: usize,
}

#[pymethods]
impl PyLpOutcome {
    fn __repr__(&self) -> String {
        format!(
            "LpOutcome(kind='{}', iterations={})",
            self.kind, self.iterations
        )
    }
}

fn lp_outcome(result: LpResult, stats: RunStats) -> PyLpOutcome {
    let mut out = PyLpOutcome {
        kind: result.kind_name().to_string(),
        x0: None,
        residual: None,
        bound: None,
        context: None,
        witness_gap: None,
        reason: None,
        iterations: stats.iterations,
    };
    match result {
        LpResult::ApproxFeasible {
            x0,
            residual,
            bound,
        } => {
            out.x0 = Some(x0);
            out.residual = Some(residual);
            out.bound = Some(bound);
        }
        LpResult::InfeasibleCertificate { inner, context } => {
            out.context = Some(match context {
                LpContext::NoRecessionReduction => "no-recession-reduction".to_string(),
                LpContext::Augmented { mu } => format!("augmented(mu={mu})"),
            });
            if let Certificate::Witness { gap, .. } = inner {
                out.witness_gap = Some(gap);
            }
        }
        LpResult::Inconclusive { reason } => out.reason = Some(reason),
    }
    out
}

fn build_query(s: &PyPointSet, query: Vec<f64>) -> PyResult<QueryPoint> {
    if query.len() != s.inner.dim() {
        return Err(PyValueError::new_err(format!(
            "query has {} coordinates, point set has dimension {}",
            query.len(),
            s.inner.dim()
        )));
    }
    QueryPoint::new(query).map_err(value_err)
}

fn build_tolerances(
    n: usize,
    eps: f64,
    rule: &str,
    max_iters: Option<usize>,
    k: Option<usize>,
    t: Option<usize>,
) -> PyResult<Tolerances> {
    let rule: PivotRule = rule.parse().map_err(PyValueError::new_err)?;
    let mut tol = Tolerances::new(eps).map_err(value_err)?.with_rule(rule);
    if let Some(max_iters) = max_iters {
        tol = tol.with_max_iters(max_iters);
    }
    if let Some(k) = k {
        tol = tol.with_k_faces(k);
    }
    if let Some(t) = t {
        tol = tol.with_t_inner(t);
    }
    tol.validate(n).map_err(value_err)?;
    Ok(tol)
}

/// Decides hull membership of `query`: an approximate solution with
/// `gap < eps * d(query, v)`, or a witness with a separating hyperplane.
#[pyfunction]
#[pyo3(signature = (s, query, eps = 1e-6, rule = "first-index", max_iters = None))]
fn solve(
    s: &PyPointSet,
    query: Vec<f64>,
    eps: f64,
    rule: &str,
    max_iters: Option<usize>,
) -> PyResult<PySolveResult> {
    let p = build_query(s, query)?;
    let tol = build_tolerances(s.inner.len(), eps, rule, max_iters, None, None)?;
    let (certificate, stats) = core_solve(&s.inner, &p, &tol);
    Ok(solve_result(certificate, stats))
}

/// Coordinate-only variant: tracks the iterate as a point, never as
/// coefficients, contracting by at least sqrt(3)/2 per step.
#[pyfunction]
#[pyo3(signature = (s, query, eps = 1e-6, max_iters = None))]
fn solve_virtual(
    s: &PyPointSet,
    query: Vec<f64>,
    eps: f64,
    max_iters: Option<usize>,
) -> PyResult<PyVirtualResult> {
    let p = build_query(s, query)?;
    let tol = build_tolerances(s.inner.len(), eps, "first-index", max_iters, None, None)?;
    let (outcome, stats) = core_solve_virtual(&s.inner, &p, &tol);
    let mut out = PyVirtualResult {
        kind: String::new(),
        point: None,
        gap: None,
        reason: None,
        iterations: stats.iterations,
        gap_series: stats.gap_series,
    };
    match outcome {
        VirtualOutcome::CoordApprox { point, gap } => {
            out.kind = "coord_approx".to_string();
            out.point = Some(point);
            out.gap = Some(gap);
        }
        VirtualOutcome::GeneralWitness { point } => {
            out.kind = "general_witness".to_string();
            out.point = Some(point);
        }
        VirtualOutcome::Inconclusive { reason } => {
            out.kind = "inconclusive".to_string();
            out.reason = Some(reason);
        }
    }
    Ok(out)
}

/// Growing-face variant carrying up to `k` hull points per cycle.
#[pyfunction]
#[pyo3(signature = (s, query, k = 3, eps = 1e-6, rule = "best-angle", max_iters = None))]
fn delta_k_solve(
    s: &PyPointSet,
    query: Vec<f64>,
    k: usize,
    eps: f64,
    rule: &str,
    max_iters: Option<usize>,
) -> PyResult<PySolveResult> {
    let p = build_query(s, query)?;
    let tol = build_tolerances(s.inner.len(), eps, rule, max_iters, Some(k), None)?;
    let (certificate, stats) = core_delta_k_solve(&s.inner, &p, &tol);
    Ok(solve_result(certificate, stats))
}

/// Sparse-greedy baseline: steepest-descent coordinate steps on the squared
/// distance over the simplex. No witness mechanism; infeasible queries end
/// inconclusive.
#[pyfunction]
#[pyo3(signature = (s, query, eps = 1e-6, max_iters = None))]
fn greedy_run(
    s: &PyPointSet,
    query: Vec<f64>,
    eps: f64,
    max_iters: Option<usize>,
) -> PyResult<PySolveResult> {
    let p = build_query(s, query)?;
    let tol = build_tolerances(s.inner.len(), eps, "first-index", max_iters, None, None)?;
    let (certificate, stats) = core_greedy_run(&s.inner, &p, &tol);
    Ok(solve_result(certificate, stats))
}

/// Exact membership verdict ("inside", "outside", or "ambiguous") by
/// enumerating face subsets. Limited to small instances.
#[pyfunction]
#[pyo3(signature = (s, query, margin = 1e-9))]
fn oracle_membership(s: &PyPointSet, query: Vec<f64>, margin: f64) -> PyResult<&'static str> {
    let p = build_query(s, query)?;
    let verdict = core_oracle_membership(&s.inner, &p, margin).map_err(value_err)?;
    Ok(match verdict {
        MembershipVerdict::Inside => "inside",
        MembershipVerdict::Outside => "outside",
        MembershipVerdict::Ambiguous => "ambiguous",
    })
}

/// Exact nearest point of the hull: `(point, distance, support_indices)`.
/// Limited to small instances.
#[pyfunction]
fn oracle_nearest(s: &PyPointSet, query: Vec<f64>) -> PyResult<(Vec<f64>, f64, Vec<usize>)> {
    let p = build_query(s, query)?;
    core_oracle_nearest(&s.inner, &p).map_err(value_err)
}

fn check_rhs(a: &PyPointSet, b: &[f64]) -> PyResult<()> {
    if b.len() != a.inner.dim() {
        return Err(PyValueError::new_err(format!(
            "right-hand side has {} rows, columns have {}",
            b.len(),
            a.inner.dim()
        )));
    }
    Ok(())
}

/// Approximate feasibility of `Ax = b, x >= 0` (columns of `A` given as a
/// point set) via the scaled no-recession reduction, to relative accuracy
/// `eps0`.
#[pyfunction]
#[pyo3(signature = (a, b, eps0 = 1e-2))]
fn two_phase_solve(a: &PyPointSet, b: Vec<f64>, eps0: f64) -> PyResult<PyLpOutcome> {
    check_rhs(a, &b)?;
    if !(eps0 > 0.0 && eps0 < 1.0) {
        return Err(PyValueError::new_err("eps0 must lie in (0, 1)"));
    }
    let (result, stats) = core_two_phase_solve(&a.inner, &b, eps0);
    Ok(lp_outcome(result, stats))
}

/// Approximate feasibility of `Ax = b, x >= 0, sum x <= M` via the augmented
/// hull query; the residual bound is `2 R' eps`.
#[pyfunction]
#[pyo3(signature = (a, b, big_m, eps = 1e-3))]
fn bounded_m_solve(a: &PyPointSet, b: Vec<f64>, big_m: f64, eps: f64) -> PyResult<PyLpOutcome> {
    check_rhs(a, &b)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(PyValueError::new_err("eps must lie in (0, 1)"));
    }
    let (result, stats) = core_bounded_m_solve(&a.inner, &b, big_m, eps).map_err(value_err)?;
    Ok(lp_outcome(result, stats))
}

#[pymodule]
fn hullcheck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPointSet>()?;
    m.add_class::<PySolveResult>()?;
    m.add_class::<PyVirtualResult>()?;
    m.add_class::<PyLpOutcome>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_virtual, m)?)?;
    m.add_function(wrap_pyfunction!(delta_k_solve, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_run, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_membership, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_nearest, m)?)?;
    m.add_function(wrap_pyfunction!(two_phase_solve, m)?)?;
    m.add_function(wrap_pyfunction!(bounded_m_solve, m)?)?;
    Ok(())
}
