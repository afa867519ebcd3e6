//! Seeded instance generators. Everything flows through the deterministic
//! stream, so a (family, seed) pair pins the instance down exactly,
//! independent of how many threads later consume it.

use hullcheck_core::{PointSet, QueryPoint, Stream};

/// `n` points with standard-gaussian coordinates in `R^dim`.
pub fn gaussian_points(stream: &mut Stream, n: usize, dim: usize) -> PointSet {
    let pts: Vec<Vec<f64>> = (0..n).map(|_| stream.next_gaussian_point(dim)).collect();
    PointSet::new(dim, &pts).expect("gaussian points are valid")
}

/// A feasible instance: gaussian points plus a query drawn from the hull
/// interior as a uniform-Dirichlet combination. Returns the generating
/// coefficients too, so callers can cross-check certificates.
pub fn feasible_instance(stream: &mut Stream, m: usize, n: usize) -> (PointSet, QueryPoint, Vec<f64>) {
    let s = gaussian_points(stream, n, m);
    let coeffs = stream.dirichlet_uniform(n);
    let p = s.combine(&coeffs);
    let p = QueryPoint::new(p).expect("combination is finite");
    (s, p, coeffs)
}

/// An infeasible instance: gaussian points plus a query at exact hull
/// distance `shift`. The query starts at the support point of a random unit
/// direction `u` and walks `shift` further along `u`; the supporting
/// hyperplane through that point with normal `u` keeps the whole hull at
/// least `shift` away, and the support point itself realizes the distance.
pub fn infeasible_instance(stream: &mut Stream, m: usize, n: usize, shift: f64) -> (PointSet, QueryPoint) {
    assert!(shift > 0.0, "outward shift must be positive");
    let s = gaussian_points(stream, n, m);
    let mut u = stream.next_gaussian_point(m);
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut u {
        *x /= norm.max(1e-300);
    }
    let support = s
        .iter()
        .max_by(|a, b| {
            let da: f64 = a.iter().zip(&u).map(|(x, y)| x * y).sum();
            let db: f64 = b.iter().zip(&u).map(|(x, y)| x * y).sum();
            da.total_cmp(&db)
        })
        .expect("nonempty set");
    let p: Vec<f64> = support.iter().zip(&u).map(|(x, y)| x + shift * y).collect();
    let p = QueryPoint::new(p).expect("shifted point is finite");
    (s, p)
}

/// The unit square's corners.
pub fn unit_square() -> PointSet {
    PointSet::new(
        2,
        &[
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ],
    )
    .expect("square is valid")
}

/// The unit square with the query at its center.
pub fn square_instance() -> (PointSet, QueryPoint) {
    let s = unit_square();
    let p = QueryPoint::new(vec![0.5, 0.5]).expect("center is finite");
    (s, p)
}

/// The unit square with a query placed so that the ball `B(p, rho)` stays
/// inside the square. Runs on this family obey the ball-visibility iteration
/// envelope `(4R^2/rho^2) * ln(delta_0 / (eps * R))`.
pub fn square_ball_instance(stream: &mut Stream, rho: f64) -> (PointSet, QueryPoint) {
    assert!(
        rho > 0.0 && rho < 0.5,
        "interior ball radius must lie in (0, 0.5), got {rho}"
    );
    let s = unit_square();
    let x = stream.next_range(rho, 1.0 - rho);
    let y = stream.next_range(rho, 1.0 - rho);
    let p = QueryPoint::new(vec![x, y]).expect("interior point is finite");
    (s, p)
}
