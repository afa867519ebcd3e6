//! Sampled visibility diagnostics.
//!
//! For a query `p` and hull points `S`, the pivot angle at a hull point `q`
//! is the angle `∠vqp` at `q` toward a pivot `v` (a set point with
//! `d(q,v) ≥ d(p,v)`). The worst best-pivot angle over the hull minus a small
//! ball around `p`,
//!
//!   θ_* = max over sampled q of ( min over pivots v of ∠vqp ),
//!
//! controls the per-step contraction: each best-pivot step multiplies the gap
//! by at most `sin θ` at its iterate, so `ν_* = sin θ_*` is the visibility
//! constant of the instance. The strict-pivot analogue comes from the cosine
//! form
//!
//!   φ_* = max over sampled q of ( min over v of cos ∠(v−p, q−p) ),
//!
//! with `λ_* = √(1 − φ_*²)`. Both are estimated here by rejection sampling
//! over uniform-Dirichlet hull draws — adequate for diagnostics, not exact
//! polytope sampling.

use anyhow::{bail, Result};
use hullcheck_core::{
    distance, solve_with_options, Certificate, PivotRule, PointSet, QueryPoint, SolveOptions,
    Stream, Tolerances,
};
use serde::Serialize;

/// Sines are floored here so the derived factors `1/ν² − 1` stay finite.
const SINE_FLOOR: f64 = 1e-16;

/// Sampled visibility constants plus the observed constants of an actual
/// best-pivot run on the same instance.
#[derive(Clone, Debug, Serialize)]
pub struct VisibilityReport {
    /// Sampled estimate of the worst best-pivot angle (radians).
    pub theta_star_sampled: f64,
    /// `sin` of the above: the sampled visibility constant.
    pub nu_star_sampled: f64,
    /// Largest per-step pivot-angle sine seen by the verification run.
    pub nu_observed: f64,
    /// `1/ν² − 1` for the verification run.
    pub c_observed: f64,
    /// Sampled max-min cosine between `v − p` and `q − p`.
    pub phi_star_sampled: f64,
    /// `√(1 − φ_*²)`: the strict-pivot contraction constant.
    pub lambda_star_sampled: f64,
    /// Draws that landed outside the exclusion ball and carried a pivot.
    pub samples_used: usize,
    /// Draws inside the exclusion ball `B(p, ε·R)`.
    pub samples_rejected: usize,
}

/// Estimates the visibility constants of `(S, p)` from `samples` seeded hull
/// draws, excluding the ball of radius `eps·R` around `p`. Also runs the
/// best-angle solver once to report the observed constants.
///
/// Fails when a sampled hull point has no pivot even though the verification
/// run certified `p` inside the hull — membership guarantees a pivot at every
/// hull point other than `p` (distance duality), so that combination means an
/// internal inconsistency.
pub fn visibility_probe(
    s: &PointSet,
    p: &QueryPoint,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<VisibilityReport> {
    if !(eps > 0.0 && eps < 1.0) {
        bail!("probe eps must lie strictly between 0 and 1, got {eps}");
    }
    if samples == 0 {
        bail!("probe needs at least one sample");
    }
    let pc = p.coords();
    let radius = s
        .iter()
        .map(|v| distance(v, pc))
        .fold(f64::NEG_INFINITY, f64::max);
    if !(radius > 0.0) {
        bail!("degenerate instance: every point coincides with the query");
    }

    let tol = Tolerances::new(eps)
        .map_err(|e| anyhow::anyhow!("probe eps rejected: {e}"))?
        .with_rule(PivotRule::BestAngle);
    let run = solve_with_options(s, p, &tol, SolveOptions::default());
    let certified_inside = matches!(run.certificate, Certificate::ApproxSolution { .. });

    let mut stream = Stream::new(seed);
    let mut theta_star: f64 = 0.0;
    let mut phi_star = f64::NEG_INFINITY;
    let mut used = 0usize;
    let mut rejected = 0usize;

    for _ in 0..samples {
        let weights = stream.dirichlet_uniform(s.len());
        let q = s.combine(&weights);
        let gap = distance(&q, pc);
        if gap > 0.0 {
            // The cosine form has no exclusion ball: every draw rates.
            let mut phi_q = f64::INFINITY;
            for v in s.iter() {
                let dv = distance(v, pc);
                if dv == 0.0 {
                    continue;
                }
                let dot: f64 = v
                    .iter()
                    .zip(pc)
                    .zip(q.iter().zip(pc))
                    .map(|((vi, pi), (qi, pj))| (vi - pi) * (qi - pj))
                    .sum();
                phi_q = phi_q.min((dot / (dv * gap)).clamp(-1.0, 1.0));
            }
            if phi_q.is_finite() {
                phi_star = phi_star.max(phi_q);
            }
        }
        if gap < eps * radius {
            rejected += 1;
            continue;
        }
        let mut theta_q = f64::INFINITY;
        let to_p: Vec<f64> = pc.iter().zip(&q).map(|(a, b)| a - b).collect();
        let np: f64 = to_p.iter().map(|x| x * x).sum::<f64>().sqrt();
        for v in s.iter() {
            if distance(&q, v) < distance(pc, v) {
                continue; // not a pivot at q
            }
            let to_v: Vec<f64> = v.iter().zip(&q).map(|(a, b)| a - b).collect();
            let nv: f64 = to_v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if np == 0.0 || nv == 0.0 {
                continue;
            }
            let cosine: f64 =
                to_p.iter().zip(&to_v).map(|(a, b)| a * b).sum::<f64>() / (np * nv);
            theta_q = theta_q.min(cosine.clamp(-1.0, 1.0).acos());
        }
        if theta_q.is_finite() {
            theta_star = theta_star.max(theta_q);
            used += 1;
        } else if certified_inside {
            bail!(
                "internal inconsistency: a sampled hull point has no pivot although the query \
                 was certified inside the hull (distance duality violated)"
            );
        }
        // Otherwise the sample is itself a witness candidate for an outside
        // query; it carries no pivot angle and is skipped.
    }

    let phi_star = if phi_star.is_finite() { phi_star } else { 1.0 };
    Ok(VisibilityReport {
        theta_star_sampled: theta_star,
        nu_star_sampled: theta_star.sin().max(SINE_FLOOR),
        nu_observed: run.stats.observed_nu,
        c_observed: run.stats.observed_c,
        phi_star_sampled: phi_star,
        lambda_star_sampled: (1.0 - phi_star * phi_star).max(0.0).sqrt().max(SINE_FLOOR),
        samples_used: used,
        samples_rejected: rejected,
    })
}
