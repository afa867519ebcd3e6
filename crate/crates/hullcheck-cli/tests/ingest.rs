//! File-format tests: headers, row-numbered errors, finiteness, and the
//! bit-exact emit-then-ingest round trip.

use std::path::PathBuf;

use hullcheck_cli::ingest::{
    format_points, format_query, read_lp, read_points, read_query, write_points, write_query,
};
use hullcheck_core::{QueryPoint, Stream};

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hullcheck-ingest-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn write(path: &PathBuf, text: &str) {
    std::fs::write(path, text).expect("write fixture");
}

#[test]
fn canonical_witness_instance_parses() {
    let dir = tmp_dir("canonical");
    let pts = dir.join("pts.csv");
    let q = dir.join("q.csv");
    write(&pts, "1,0\n0,1\n");
    write(&q, "0,0\n");
    let s = read_points(&pts).expect("points parse");
    assert_eq!(s.dim(), 2);
    assert_eq!(s.len(), 2);
    assert_eq!(s.point(0), &[1.0, 0.0]);
    assert_eq!(s.point(1), &[0.0, 1.0]);
    let p = read_query(&q, Some(2)).expect("query parses");
    assert_eq!(p.coords(), &[0.0, 0.0]);
}

#[test]
fn header_declares_the_dimension() {
    let dir = tmp_dir("header");
    let pts = dir.join("pts.csv");
    write(&pts, "# dim=3\n1,2,3\n4,5,6\n");
    let s = read_points(&pts).expect("points parse");
    assert_eq!(s.dim(), 3);
    assert_eq!(s.len(), 2);

    let bad = dir.join("bad.csv");
    write(&bad, "# dim=3\n1,2\n");
    let err = read_points(&bad).unwrap_err().to_string();
    assert!(err.contains("row 1"), "error names the row: {err}");
    assert!(err.contains("expected 3 fields"), "{err}");
}

#[test]
fn malformed_row_is_named() {
    let dir = tmp_dir("malformed");
    let pts = dir.join("pts.csv");
    write(&pts, "1,x\n");
    let err = read_points(&pts).unwrap_err().to_string();
    assert!(err.contains("row 1"), "{err}");
    assert!(err.contains("\"x\""), "{err}");

    let pts2 = dir.join("pts2.csv");
    write(&pts2, "# dim=2\n1,0\n2,oops\n");
    let err2 = read_points(&pts2).unwrap_err().to_string();
    assert!(err2.contains("row 2"), "{err2}");
}

#[test]
fn non_finite_values_are_rejected() {
    let dir = tmp_dir("nonfinite");
    for (tag, text) in [("nan", "1,NaN\n"), ("inf", "inf,0\n"), ("neginf", "0,-inf\n")] {
        let path = dir.join(format!("{tag}.csv"));
        write(&path, text);
        let err = read_points(&path).unwrap_err().to_string();
        assert!(err.contains("non-finite"), "{tag}: {err}");
        assert!(err.contains("row 1"), "{tag}: {err}");
    }
}

#[test]
fn ragged_rows_are_rejected_without_header_too() {
    let dir = tmp_dir("ragged");
    let pts = dir.join("pts.csv");
    write(&pts, "1,2\n3,4,5\n");
    let err = read_points(&pts).unwrap_err().to_string();
    assert!(err.contains("row 2"), "{err}");
}

#[test]
fn query_must_be_a_single_row() {
    let dir = tmp_dir("query");
    let q = dir.join("q.csv");
    write(&q, "1,2\n3,4\n");
    let err = read_query(&q, None).unwrap_err().to_string();
    assert!(err.contains("exactly one row"), "{err}");

    let q2 = dir.join("q2.csv");
    write(&q2, "1,2,3\n");
    let err2 = read_query(&q2, Some(2)).unwrap_err().to_string();
    assert!(err2.contains("dimension 2"), "{err2}");
}

#[test]
fn round_trip_is_bit_exact() {
    let dir = tmp_dir("roundtrip");
    let mut stream = Stream::new(20260815);
    for trial in 0..20 {
        let n = 1 + (trial % 7);
        let dim = 1 + (trial % 5);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                (0..dim)
                    .map(|_| stream.next_gaussian() * 10f64.powi(stream.next_index(7) as i32 - 3))
                    .collect()
            })
            .collect();
        let s = hullcheck_core::PointSet::new(dim, &rows).expect("valid points");
        let path = dir.join(format!("pts-{trial}.csv"));
        write_points(&path, &s).expect("write");
        let back = read_points(&path).expect("read");
        assert_eq!(back.dim(), s.dim());
        for i in 0..s.len() {
            for (a, b) in s.point(i).iter().zip(back.point(i)) {
                assert_eq!(a.to_bits(), b.to_bits(), "coordinate {a} changed to {b}");
            }
        }

        let q = QueryPoint::new(rows[0].clone()).expect("valid query");
        let qpath = dir.join(format!("q-{trial}.csv"));
        write_query(&qpath, &q).expect("write query");
        let qback = read_query(&qpath, Some(dim)).expect("read query");
        for (a, b) in q.coords().iter().zip(qback.coords()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}

#[test]
fn formatting_emits_header_and_shortest_decimals() {
    let s = hullcheck_core::PointSet::new(2, &[vec![0.1, -0.0], vec![2.5, 1e-300]])
        .expect("valid points");
    let text = format_points(&s);
    assert!(text.starts_with("# dim=2\n"), "{text}");
    assert!(text.contains("0.1,-0\n"), "{text}");
    let q = QueryPoint::new(vec![0.30000000000000004]).expect("valid");
    assert!(format_query(&q).contains("0.30000000000000004"));
}

#[test]
fn lp_pair_reads_columns_and_checks_shapes() {
    let dir = tmp_dir("lp");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    // Two rows, three columns: columns are the points (1,4), (2,5), (3,6).
    write(&a, "1,2,3\n4,5,6\n");
    write(&b, "7,8\n");
    let (columns, rhs) = read_lp(&a, &b).expect("lp parses");
    assert_eq!(columns.dim(), 2);
    assert_eq!(columns.len(), 3);
    assert_eq!(columns.point(0), &[1.0, 4.0]);
    assert_eq!(columns.point(2), &[3.0, 6.0]);
    assert_eq!(rhs, vec![7.0, 8.0]);

    let short_b = dir.join("short-b.csv");
    write(&short_b, "7\n");
    let err = read_lp(&a, &short_b).unwrap_err().to_string();
    assert!(err.contains("A has 2 rows"), "{err}");

    let multi_b = dir.join("multi-b.csv");
    write(&multi_b, "7,8\n9,10\n");
    let err2 = read_lp(&a, &multi_b).unwrap_err().to_string();
    assert!(err2.contains("single row"), "{err2}");
}

#[test]
fn empty_and_comment_lines_are_skipped() {
    let dir = tmp_dir("comments");
    let pts = dir.join("pts.csv");
    write(&pts, "# dim=2\n# generated fixture\n\n1,0\n\n0,1\n");
    let s = read_points(&pts).expect("points parse");
    assert_eq!(s.len(), 2);

    let empty = dir.join("empty.csv");
    write(&empty, "# dim=2\n");
    let err = read_points(&empty).unwrap_err().to_string();
    assert!(err.contains("no points"), "{err}");
}
