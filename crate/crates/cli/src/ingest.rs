use std::io::Read;
use std::path::Path;

use m2s2::PointCloud;

use crate::{CliError, Result};

/// A parsed input file.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub cloud: PointCloud,
    /// SHA-256 of the raw bytes.
    pub hash: String,
}

/// Reads a CSV with header `x,y[,z],label` (any column order).
pub fn ingest_csv(path: &Path) -> Result<Ingested> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| parse_error(path.display(), e.to_string()))?;
    parse_csv(&bytes, &path.display().to_string())
}

fn parse_error(path: impl std::fmt::Display, message: String) -> CliError {
    CliError::Parse {
        path: path.to_string(),
        message,
    }
}

/// Parses CSV bytes; `name` is used in error messages.
///
/// Labels are sorted by name and numbered in that order. Points are sorted
/// by label, then coordinates, so row order never reaches the results.
pub fn parse_csv(bytes: &[u8], name: &str) -> Result<Ingested> {
    use sha2::{Digest, Sha256};
    let err = |m: String| parse_error(name, m);
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
    let headers = reader.headers().map_err(|e| err(format!("line 1: {e}")))?.clone();
    if headers.is_empty() {
        return Err(err("empty file".into()));
    }
    let find = |c: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(c));
    let mut axes = Vec::new();
    for c in ["x", "y"] {
        axes.push(find(c).ok_or_else(|| err(format!("line 1: missing column `{c}`")))?);
    }
    if let Some(z) = find("z") {
        axes.push(z);
    }
    let label_col = find("label").ok_or_else(|| err("line 1: missing column `label`".into()))?;

    let mut rows: Vec<(String, Vec<f64>)> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| err(format!("line {line}: {e}")))?;
        let mut coords = Vec::with_capacity(axes.len());
        for &a in &axes {
            let field = record
                .get(a)
                .ok_or_else(|| err(format!("line {line}: missing column `{}`", &headers[a])))?;
            let v: f64 = field
                .parse()
                .map_err(|_| err(format!("line {line}: `{field}` is not a number")))?;
            if !v.is_finite() {
                return Err(err(format!("line {line}: non-finite coordinate `{field}`")));
            }
            coords.push(v);
        }
        let label = record
            .get(label_col)
            .filter(|l| !l.is_empty())
            .ok_or_else(|| err(format!("line {line}: missing label")))?;
        rows.push((label.to_string(), coords));
    }
    if rows.is_empty() {
        return Err(err("no data rows".into()));
    }
    let mut names: Vec<String> = rows.iter().map(|(l, _)| l.clone()).collect();
    names.sort();
    names.dedup();
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            a.1.iter()
                .zip(&b.1)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    let dim = axes.len();
    let points = rows.into_iter().map(|(l, c)| {
        let idx = names.binary_search(&l).expect("label was collected");
        (c, idx)
    });
    let points: Vec<_> = points.collect();
    let cloud = PointCloud::with_species_names(dim, points, names).map_err(|e| err(e.to_string()))?;
    Ok(Ingested {
        cloud,
        hash: format!("{:x}", Sha256::digest(bytes)),
    })
}
