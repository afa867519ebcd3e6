//! Shared instance generators for the integration tests. Everything is
//! seeded through the crate's deterministic stream so failures reproduce.
#![allow(dead_code)]

use hullcheck_core::{PointSet, QueryPoint, Stream};

/// `n` points with standard-gaussian coordinates in `R^dim`.
pub fn gaussian_points(stream: &mut Stream, n: usize, dim: usize) -> PointSet {
    let pts: Vec<Vec<f64>> = (0..n).map(|_| stream.next_gaussian_point(dim)).collect();
    PointSet::new(dim, &pts).expect("gaussian points are valid")
}

/// A query drawn from the hull interior: a uniform-Dirichlet combination of
/// the points. Also returns the generating coefficients.
pub fn interior_query(stream: &mut Stream, s: &PointSet) -> (QueryPoint, Vec<f64>) {
    let coeffs = stream.dirichlet_uniform(s.len());
    let p = s.combine(&coeffs);
    (QueryPoint::new(p).expect("combination is finite"), coeffs)
}

/// A query at distance at least `shift` outside the hull: start from the
/// support point of a random direction and walk `shift` further along it.
pub fn outside_query(stream: &mut Stream, s: &PointSet, shift: f64) -> QueryPoint {
    let dim = s.dim();
    let mut u = stream.next_gaussian_point(dim);
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
    let p: Vec<f64> = support
        .iter()
        .zip(&u)
        .map(|(x, y)| x + shift * y)
        .collect();
    QueryPoint::new(p).expect("shifted point is finite")
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

pub fn query(coords: &[f64]) -> QueryPoint {
    QueryPoint::new(coords.to_vec()).expect("query is finite")
}

pub fn points(dim: usize, pts: &[&[f64]]) -> PointSet {
    let rows: Vec<Vec<f64>> = pts.iter().map(|r| r.to_vec()).collect();
    PointSet::new(dim, &rows).expect("points are valid")
}
