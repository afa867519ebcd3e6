//! File formats.
//!
//! Points travel as CSV with a `# dim=m` header comment and one point per
//! row (`m` comma-separated decimal fields). The query point lives in a
//! separate one-row file. An LP instance `Ax = b` arrives as two CSVs: one
//! holding the rows of `A`, one holding `b` as a single row. All readers
//! reject NaN and infinities and report errors by 1-based data-row number.
//! Writers emit shortest round-trip decimals, so emit-then-ingest reproduces
//! every coordinate bit-exactly.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hullcheck_core::{PointSet, QueryPoint};

/// A parsed CSV: the dimension declared by a `# dim=m` header (if any) and
/// the data rows. Rows are checked to be rectangular and finite; when a
/// header is present every row must have exactly the declared width.
struct RawTable {
    declared_dim: Option<usize>,
    rows: Vec<Vec<f64>>,
}

fn parse_table(path: &Path) -> Result<RawTable> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("could not read {}", path.display()))?;
    let mut declared_dim = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            // Only the dimension header is meaningful; other comments pass.
            let comment = comment.trim();
            if let Some(value) = comment.strip_prefix("dim=") {
                let dim: usize = value.trim().parse().with_context(|| {
                    format!("{}: malformed header {line:?}", path.display())
                })?;
                if dim == 0 {
                    bail!("{}: header declares dimension 0", path.display());
                }
                declared_dim = Some(dim);
            }
            continue;
        }
        let row_number = rows.len() + 1;
        let mut row = Vec::new();
        for field in line.split(',') {
            let field = field.trim();
            let value: f64 = field.parse().map_err(|_| {
                anyhow::anyhow!(
                    "{}: row {row_number}: could not parse field {field:?} as a decimal",
                    path.display()
                )
            })?;
            if !value.is_finite() {
                bail!(
                    "{}: row {row_number}: non-finite value {field:?}",
                    path.display()
                );
            }
            row.push(value);
        }
        let expected = declared_dim.or_else(|| rows.first().map(Vec::len));
        if let Some(expected) = expected {
            if row.len() != expected {
                bail!(
                    "{}: row {row_number}: expected {expected} fields, found {}",
                    path.display(),
                    row.len()
                );
            }
        }
        rows.push(row);
    }
    Ok(RawTable { declared_dim, rows })
}

/// Reads a point set: `# dim=m` header (or the first row's width when the
/// header is absent) and one point per row.
pub fn read_points(path: &Path) -> Result<PointSet> {
    let table = parse_table(path)?;
    if table.rows.is_empty() {
        bail!("{}: no points", path.display());
    }
    let dim = table.declared_dim.unwrap_or(table.rows[0].len());
    PointSet::new(dim, &table.rows).with_context(|| format!("{}: invalid points", path.display()))
}

/// Reads the query point: exactly one data row.
pub fn read_query(path: &Path, expected_dim: Option<usize>) -> Result<QueryPoint> {
    let table = parse_table(path)?;
    if table.rows.len() != 1 {
        bail!(
            "{}: the query file must contain exactly one row, found {}",
            path.display(),
            table.rows.len()
        );
    }
    let row = table.rows.into_iter().next().expect("one row");
    if let Some(dim) = table.declared_dim {
        if row.len() != dim {
            bail!(
                "{}: query has {} fields but the header declares dim={dim}",
                path.display(),
                row.len()
            );
        }
    }
    if let Some(dim) = expected_dim {
        if row.len() != dim {
            bail!(
                "{}: query has {} fields but the point set has dimension {dim}",
                path.display(),
                row.len()
            );
        }
    }
    QueryPoint::new(row).with_context(|| format!("{}: invalid query", path.display()))
}

/// Reads `Ax = b`: `a_path` holds the rows of `A`, `b_path` holds `b` as one
/// row of length equal to the number of rows of `A`. Returns the columns of
/// `A` as a point set (the geometric form every LP reduction consumes) and
/// `b`.
pub fn read_lp(a_path: &Path, b_path: &Path) -> Result<(PointSet, Vec<f64>)> {
    let a_table = parse_table(a_path)?;
    if a_table.rows.is_empty() {
        bail!("{}: coefficient matrix is empty", a_path.display());
    }
    let m = a_table.rows.len();
    let n = a_table.rows[0].len();
    let mut columns = vec![vec![0.0; m]; n];
    for (i, row) in a_table.rows.iter().enumerate() {
        for (j, &value) in row.iter().enumerate() {
            columns[j][i] = value;
        }
    }
    let b_table = parse_table(b_path)?;
    if b_table.rows.len() != 1 {
        bail!(
            "{}: the right-hand side must be a single row, found {}",
            b_path.display(),
            b_table.rows.len()
        );
    }
    let b = b_table.rows.into_iter().next().expect("one row");
    if b.len() != m {
        bail!(
            "{}: right-hand side has {} fields but A has {m} rows",
            b_path.display(),
            b.len()
        );
    }
    let columns = PointSet::new(m, &columns)
        .with_context(|| format!("{}: invalid coefficient matrix", a_path.display()))?;
    Ok((columns, b))
}

fn push_row(out: &mut String, row: &[f64]) {
    for (i, x) in row.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        // `{}` on f64 prints the shortest decimal that parses back to the
        // same bits, which is what makes the round-trip exact.
        let _ = write!(out, "{x}");
    }
    out.push('\n');
}

/// The CSV text for a point set, `# dim=m` header included.
pub fn format_points(s: &PointSet) -> String {
    let mut out = format!("# dim={}\n", s.dim());
    for point in s.iter() {
        push_row(&mut out, point);
    }
    out
}

/// The CSV text for a query point (one row, headered like a point file).
pub fn format_query(p: &QueryPoint) -> String {
    let mut out = format!("# dim={}\n", p.dim());
    push_row(&mut out, p.coords());
    out
}

pub fn write_points(path: &Path, s: &PointSet) -> Result<()> {
    std::fs::write(path, format_points(s))
        .with_context(|| format!("could not write {}", path.display()))
}

pub fn write_query(path: &Path, p: &QueryPoint) -> Result<()> {
    std::fs::write(path, format_query(p))
        .with_context(|| format!("could not write {}", path.display()))
}
